use std::fmt::Write as _;

use lefschetz_core::catalog::{CatalogEntry, Outcome};
use lefschetz_core::cohomology::{betti_table, cohomology};
use lefschetz_core::exterior::KForm;
use lefschetz_core::lattice::{BgSolution, LatticeCertificate};
use lefschetz_core::lefschetz::{LefschetzReport, Mode};
use lefschetz_core::liealg::LieAlgebra;
use lefschetz_core::linalg::{Matrix, Subspace};
use lefschetz_core::symcon::{BgReport, ContactStructure, SymplecticStructure};
use serde::Serialize;

#[derive(Serialize, Debug)]
pub struct DegreeBody {
    k: usize,
    source_betti: usize,
    target_betti: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    domain_covered: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    well_defined: Option<bool>,
    injective: bool,
    surjective: bool,
    verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    kernel: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kernel_image: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    uncovered: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ill_defined: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct LefschetzBody {
    mode: &'static str,
    n: usize,
    s: usize,
    verdict: bool,
    degrees: Vec<DegreeBody>,
}

#[derive(Serialize, Debug)]
pub struct AnalyzeBody {
    field: String,
    dim: usize,
    basis: Vec<String>,
    brackets: Vec<String>,
    nilpotent: bool,
    solvable: bool,
    completely_solvable: String,
    unimodular: bool,
    heisenberg: bool,
    betti: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    representatives: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<Box<Report>>,
}

#[derive(Serialize, Debug)]
pub struct Condition {
    name: &'static str,
    pass: bool,
}

#[derive(Serialize, Debug)]
pub struct BgBody {
    complement: Vec<String>,
    conditions: Vec<Condition>,
    all_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    correction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    obstruction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_n: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct OffendingBody {
    place: String,
    value: String,
}

#[derive(Serialize, Debug)]
pub struct LatticeBody {
    algebra_id: String,
    ideal_nilpotent: bool,
    rational_basis_ok: bool,
    integral_ok: bool,
    derivation_consistent: bool,
    valid: bool,
    ideal_basis: Vec<Vec<String>>,
    structure_constants: Vec<String>,
    exp_matrix: Vec<Vec<String>>,
    offending: Vec<OffendingBody>,
}

#[derive(Serialize, Debug)]
pub struct BgSystemBody {
    k: i64,
    rank: usize,
    parametrization_ok: bool,
    p: String,
    q: String,
    conditions_ok: bool,
}

#[derive(Serialize, Debug)]
pub struct ListItem {
    id: &'static str,
    description: &'static str,
}

#[derive(Serialize, Debug)]
pub struct ManifestItemBody {
    expectation: String,
    provenance: String,
    actual: String,
    ok: bool,
}

#[derive(Serialize, Debug)]
pub struct ManifestBody {
    id: String,
    description: String,
    all_ok: bool,
    items: Vec<ManifestItemBody>,
}

#[derive(Serialize, Debug)]
pub struct FlagBody {
    check: &'static str,
    value: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    details: Vec<Condition>,
}

#[derive(Serialize, Debug)]
#[serde(tag = "report", rename_all = "snake_case")]
pub enum Report {
    Analyze(AnalyzeBody),
    Lefschetz(LefschetzBody),
    Flag(FlagBody),
    BgCheck(BgBody),
    LatticeCheck(LatticeBody),
    BgSystem(BgSystemBody),
    CatalogList {
        entries: Vec<ListItem>,
    },
    Manifest(ManifestBody),
    /// A JSON algebra document, printed as is.
    #[serde(skip)]
    Document(String),
}

fn render(f: &Option<KForm>, names: &[String]) -> Option<String> {
    f.as_ref().map(|w| w.render(names))
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
}

fn on_off(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

impl Report {
    pub fn lefschetz(g: &LieAlgebra, s: usize, r: LefschetzReport) -> Self {
        let names = g.names();
        let verdict = r.verdict();
        let degrees = r
            .degrees
            .into_iter()
            .map(|d| DegreeBody {
                k: d.k,
                source_betti: d.source_betti,
                target_betti: d.target_betti,
                domain_covered: d.domain_covered,
                well_defined: d.well_defined,
                injective: d.injective,
                surjective: d.surjective,
                verdict: d.verdict,
                kernel: render(&d.kernel, names),
                kernel_image: render(&d.kernel_image, names),
                uncovered: render(&d.uncovered, names),
                ill_defined: render(&d.ill_defined, names),
            })
            .collect();
        let mode = if r.mode == Mode::Symplectic { "symplectic" } else { "contact" };
        Report::Lefschetz(LefschetzBody { mode, n: r.n, s, verdict, degrees })
    }

    pub fn flag(check: &'static str, value: bool, details: Vec<(&'static str, bool)>) -> Self {
        let details = details.into_iter().map(|(name, pass)| Condition { name, pass }).collect();
        Report::Flag(FlagBody { check, value, details })
    }

    pub fn analyze(g: &LieAlgebra, s: Option<&SymplecticStructure>, c: Option<&ContactStructure>, reps: bool) -> Self {
        let cls = g.classify();
        let representatives = reps.then(|| {
            (0..=g.dim())
                .map(|k| cohomology(g, k).expect("degree in range").representatives.iter().map(|r| r.render(g.names())).collect())
                .collect()
        });
        Report::Analyze(AnalyzeBody {
            field: g.field().to_string(),
            dim: g.dim(),
            basis: g.names().to_vec(),
            brackets: g.render_brackets(),
            nilpotent: cls.nilpotent,
            solvable: cls.solvable,
            completely_solvable: cls.completely_solvable.to_string(),
            unimodular: g.is_unimodular(),
            heisenberg: g.is_heisenberg(),
            betti: betti_table(g),
            omega: s.map(|s| s.omega.render(g.names())),
            eta: c.map(|c| c.eta.render(c.algebra.names())),
            representatives,
            check: None,
        })
    }

    /// Attaches a check to an analysis.
    pub fn then(self, check: Report) -> Self {
        match self {
            Report::Analyze(mut a) => {
                a.check = Some(Box::new(check));
                Report::Analyze(a)
            }
            other => other,
        }
    }

    pub fn bg(g: &LieAlgebra, a: &Subspace, r: &BgReport) -> Self {
        const NAMES: [&str; 6] = [
            "(i) abelian complement of the commutator",
            "(ii) even dimensions",
            "(iii) center meets commutator trivially",
            "(iv) split representative",
            "(v) parts closed and not exact",
            "(vi) ad-invariance",
        ];
        let names = g.names();
        Report::BgCheck(BgBody {
            complement: a.basis().iter().map(|v| g.render_vector(v)).collect(),
            conditions: NAMES.iter().zip(r.flags()).map(|(&name, pass)| Condition { name, pass }).collect(),
            all_pass: r.all_pass(),
            correction: render(&r.correction, names),
            obstruction: render(&r.obstruction, names),
            omega_a: render(&r.omega_a, names),
            omega_n: render(&r.omega_n, names),
        })
    }

    pub fn lattice(c: &LatticeCertificate) -> Self {
        Report::LatticeCheck(LatticeBody {
            algebra_id: c.algebra_id.clone(),
            ideal_nilpotent: c.ideal_nilpotent,
            rational_basis_ok: c.rational_basis_ok,
            integral_ok: c.integral_ok,
            derivation_consistent: c.derivation_consistent,
            valid: c.valid(),
            ideal_basis: matrix_strings(&c.ideal_basis),
            structure_constants: c.structure_constants.render_brackets(),
            exp_matrix: matrix_strings(&c.exp_matrix),
            offending: c.offending.iter().map(|o| OffendingBody { place: o.place.clone(), value: o.value.to_string() }).collect(),
        })
    }

    pub fn bg_system(b: &BgSolution) -> Self {
        Report::BgSystem(BgSystemBody {
            k: b.k,
            rank: b.rank_of_m,
            parametrization_ok: b.parametrization_ok,
            p: b.p.to_string(),
            q: b.q.to_string(),
            conditions_ok: b.conditions_ok,
        })
    }

    pub fn catalog_list(items: &[(&'static str, &'static str)]) -> Self {
        Report::CatalogList { entries: items.iter().map(|&(id, description)| ListItem { id, description }).collect() }
    }

    pub fn manifest(e: &CatalogEntry, outcomes: &[Outcome]) -> Self {
        Report::Manifest(ManifestBody {
            id: e.id.clone(),
            description: e.description.clone(),
            all_ok: outcomes.iter().all(|o| o.ok),
            items: outcomes
                .iter()
                .map(|o| ManifestItemBody {
                    expectation: o.item.expectation.to_string(),
                    provenance: o.item.provenance.to_string(),
                    actual: o.actual.clone(),
                    ok: o.ok,
                })
                .collect(),
        })
    }

    pub fn passed(&self) -> bool {
        match self {
            Report::Analyze(a) => a.check.as_ref().is_none_or(|c| c.passed()),
            Report::Lefschetz(l) => l.verdict,
            Report::Flag(f) => f.value,
            Report::BgCheck(b) => b.all_pass,
            Report::LatticeCheck(l) => l.valid,
            Report::BgSystem(b) => b.parametrization_ok && b.conditions_ok,
            Report::CatalogList { .. } | Report::Document(_) => true,
            Report::Manifest(m) => m.all_ok,
        }
    }

    pub fn json(&self) -> String {
        let mut out = match self {
            Report::Document(d) => d.clone(),
            r => serde_json::to_string_pretty(r).expect("reports serialize"),
        };
        out.push('\n');
        out
    }

    pub fn text(&self) -> String {
        let mut o = String::new();
        self.write_text(&mut o);
        o
    }

    fn write_text(&self, o: &mut String) {
        match self {
            Report::Analyze(a) => {
                let _ = writeln!(o, "algebra of dimension {} over {}", a.dim, a.field);
                let _ = writeln!(o, "basis: {}", a.basis.join(", "));
                if a.brackets.is_empty() {
                    let _ = writeln!(o, "brackets: abelian");
                } else {
                    let _ = writeln!(o, "brackets:");
                    for b in &a.brackets {
                        let _ = writeln!(o, "  {b}");
                    }
                }
                let _ = writeln!(
                    o,
                    "nilpotent: {}  solvable: {}  completely solvable: {}  unimodular: {}  heisenberg: {}",
                    a.nilpotent, a.solvable, a.completely_solvable, a.unimodular, a.heisenberg
                );
                let table: Vec<String> = a.betti.iter().map(usize::to_string).collect();
                let _ = writeln!(o, "betti: {}", table.join(" "));
                if let Some(w) = &a.omega {
                    let _ = writeln!(o, "omega: {w}");
                }
                if let Some(e) = &a.eta {
                    let _ = writeln!(o, "eta: {e}");
                }
                if let Some(reps) = &a.representatives {
                    for (k, r) in reps.iter().enumerate().filter(|(_, r)| !r.is_empty()) {
                        let _ = writeln!(o, "H^{k}: {}", r.join(", "));
                    }
                }
                if let Some(c) = &a.check {
                    c.write_text(o);
                }
            }
            Report::Lefschetz(l) => {
                let _ = writeln!(o, "{} {}-Lefschetz (n = {}): {}", l.mode, l.s, l.n, on_off(l.verdict));
                for d in &l.degrees {
                    let mut flags = format!("injective {}, surjective {}", d.injective, d.surjective);
                    if let (Some(c), Some(w)) = (d.domain_covered, d.well_defined) {
                        flags = format!("covered {c}, well defined {w}, {flags}");
                    }
                    let _ = writeln!(o, "  k = {}: b = {} -> {}, {}: {}", d.k, d.source_betti, d.target_betti, flags, on_off(d.verdict));
                    if let Some(w) = &d.uncovered {
                        let _ = writeln!(o, "    class without admissible representative: {w}");
                    }
                    if let Some(w) = &d.ill_defined {
                        let _ = writeln!(o, "    exact admissible form with non-exact image: {w}");
                    }
                    if let Some(w) = &d.kernel {
                        let _ = writeln!(o, "    kernel witness: {w}");
                    }
                    if let Some(w) = &d.kernel_image {
                        let _ = writeln!(o, "    its image (exact): {w}");
                    }
                }
            }
            Report::Flag(f) => {
                let _ = writeln!(o, "{}: {}", f.check, on_off(f.value));
                for d in &f.details {
                    let _ = writeln!(o, "  {}: {}", d.name, on_off(d.pass));
                }
            }
            Report::BgCheck(b) => {
                let _ = writeln!(o, "complement: span{{{}}}", b.complement.join(", "));
                for c in &b.conditions {
                    let _ = writeln!(o, "  {}: {}", c.name, on_off(c.pass));
                }
                for (label, v) in
                    [("correction", &b.correction), ("obstruction", &b.obstruction), ("omega_a", &b.omega_a), ("omega_n", &b.omega_n)]
                {
                    if let Some(v) = v {
                        let _ = writeln!(o, "  {label}: {v}");
                    }
                }
                let _ = writeln!(o, "all conditions: {}", on_off(b.all_pass));
            }
            Report::LatticeCheck(l) => {
                if !l.algebra_id.is_empty() {
                    let _ = writeln!(o, "{}", l.algebra_id);
                }
                let _ = writeln!(o, "ideal nilpotent: {}", l.ideal_nilpotent);
                let _ = writeln!(o, "rational structure constants: {}", l.rational_basis_ok);
                let _ = writeln!(o, "integral exp matrix: {}", l.integral_ok);
                let _ = writeln!(o, "derivation matches blocks: {}", l.derivation_consistent);
                let _ = writeln!(o, "exp matrix in the candidate basis:");
                for row in &l.exp_matrix {
                    let _ = writeln!(o, "  [{}]", row.join(", "));
                }
                for x in &l.offending {
                    let _ = writeln!(o, "  offending {}: {}", x.place, x.value);
                }
                let _ = writeln!(o, "certificate valid: {}", on_off(l.valid));
            }
            Report::BgSystem(b) => {
                let _ = writeln!(
                    o,
                    "k = {}: rank {}, parametrization {}, p = {}, q = {}, rationality conditions {}",
                    b.k, b.rank, b.parametrization_ok, b.p, b.q, b.conditions_ok
                );
            }
            Report::CatalogList { entries } => {
                let width = entries.iter().map(|e| e.id.len()).max().unwrap_or(0);
                for e in entries {
                    let _ = writeln!(o, "{:width$}  {}", e.id, e.description);
                }
            }
            Report::Manifest(m) => {
                let _ = writeln!(o, "{}: {}", m.id, m.description);
                for i in &m.items {
                    let status = if i.ok { "ok" } else { "MISMATCH" };
                    let _ = writeln!(o, "  {status:8} {} [{}] got {}", i.expectation, i.provenance, i.actual);
                }
            }
            Report::Document(d) => {
                o.push_str(d);
                o.push('\n');
            }
        }
    }
}
