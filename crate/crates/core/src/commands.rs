//! Command layer shared by the CLI and the Python bindings: group specs,
//! `check`, `survey-psl`, `density`, `lattice` and certificate verification.

use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::density::{density_checkpoints, DensityRow};
use crate::error::{Error, Result};
use crate::families::{
    affine_general_linear, alternating, cyclic, dihedral, direct_product, ingest_group, symmetric, Psl2,
};
use crate::field::prime_power;
use crate::group::PermGroup;
use crate::lattice::SubgroupLattice;
use crate::perm::Permutation;
use crate::predicates::{
    is_exp_simple_quotient, is_exp_trivial, is_exponential, is_minimal_wexp_nonsolvable,
    is_weakly_exponential, is_wexp_solvable,
};
use crate::psl::{psl2_wexp_classifier, PslRoute};
use crate::report::{GroupInfo, Report, Timings, Verdict, TOOL_VERSION};
use crate::structure::{exponent, Exhaustive};
use crate::witness::{verify_certificate, Certificate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Dihedral(usize),
    Cyclic(usize),
    Psl2(u64),
    Agl(u32, u64),
    Product(Vec<GroupSpec>),
    File(String),
}

fn parse_num<T: FromStr>(text: &str, spec: &str) -> Result<T> {
    text.trim()
        .parse()
        .map_err(|_| Error::invalid(format!("bad parameter {text:?} in group spec {spec:?}")))
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::invalid("empty group spec"));
        }
        if s.contains('*') {
            let parts = s.split('*').map(str::parse).collect::<Result<Vec<GroupSpec>>>()?;
            return Ok(GroupSpec::Product(parts));
        }
        let Some((tag, arg)) = s.split_once(':') else {
            return Ok(GroupSpec::File(s.to_string()));
        };
        Ok(match tag.trim().to_ascii_uppercase().as_str() {
            "S" => GroupSpec::Symmetric(parse_num(arg, s)?),
            "A" => GroupSpec::Alternating(parse_num(arg, s)?),
            "D" => GroupSpec::Dihedral(parse_num(arg, s)?),
            "C" => GroupSpec::Cyclic(parse_num(arg, s)?),
            "PSL2" => GroupSpec::Psl2(parse_num(arg, s)?),
            "AGL" => {
                let (n, p) = arg
                    .split_once(',')
                    .ok_or_else(|| Error::invalid(format!("AGL needs n,p in {s:?}")))?;
                GroupSpec::Agl(parse_num(n, s)?, parse_num(p, s)?)
            }
            _ => GroupSpec::File(s.to_string()),
        })
    }
}

/// A constructed group plus subgroups its family knows about.
#[derive(Clone, Debug)]
pub struct BuiltGroup {
    pub spec: String,
    pub group: PermGroup,
    pub hints: Vec<(String, Vec<Permutation>)>,
}

impl GroupSpec {
    pub fn build(&self, caps: &Caps) -> Result<BuiltGroup> {
        let mut hints = Vec::new();
        let group = match self {
            GroupSpec::Symmetric(n) => symmetric(*n)?,
            GroupSpec::Alternating(n) => alternating(*n)?,
            GroupSpec::Dihedral(n) => dihedral(*n)?,
            GroupSpec::Cyclic(n) => cyclic(*n)?,
            GroupSpec::Psl2(q) => {
                prime_power(*q)?;
                let psl = Psl2::new(*q, caps)?;
                hints = psl.structured_subgroups();
                psl.group
            }
            GroupSpec::Agl(n, p) => affine_general_linear(*n, *p, caps)?,
            GroupSpec::Product(parts) => {
                let mut acc: Option<PermGroup> = None;
                for part in parts {
                    let g = part.build(caps)?.group;
                    acc = Some(match acc {
                        None => g,
                        Some(a) => direct_product(&a, &g, caps)?,
                    });
                }
                acc.ok_or_else(|| Error::invalid("empty product"))?
            }
            GroupSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::invalid(format!("cannot read group file {path:?}: {e}")))?;
                ingest_group(&text, caps)?
            }
        };
        if group.degree() > caps.degree_bound {
            return Err(Error::DegreeBound {
                degree: group.degree(),
                bound: caps.degree_bound,
            });
        }
        Ok(BuiltGroup {
            spec: self.to_string(),
            group,
            hints,
        })
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupSpec::Symmetric(n) => write!(f, "S:{n}"),
            GroupSpec::Alternating(n) => write!(f, "A:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D:{n}"),
            GroupSpec::Cyclic(n) => write!(f, "C:{n}"),
            GroupSpec::Psl2(q) => write!(f, "PSL2:{q}"),
            GroupSpec::Agl(n, p) => write!(f, "AGL:{n},{p}"),
            GroupSpec::Product(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                f.write_str(&names.join("*"))
            }
            GroupSpec::File(path) => f.write_str(path),
        }
    }
}

pub fn build_group(spec: &str, caps: &Caps) -> Result<BuiltGroup> {
    spec.parse::<GroupSpec>()?.build(caps)
}

/// Generators separated by commas or semicolons, each in cycle notation.
pub fn parse_generators(text: &str, degree: usize) -> Result<Vec<Permutation>> {
    text.split([',', ';'])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| Permutation::parse(t, degree))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    Exponential,
    ExpTrivial,
    ExpSimple,
    WeaklyExponential,
    WexpSolvable,
    MinimalWexpNonsolvable,
    Exponent,
    Solvable,
    Nilpotent,
}

impl Predicate {
    pub const ALL: [Predicate; 9] = [
        Predicate::Exponential,
        Predicate::ExpTrivial,
        Predicate::ExpSimple,
        Predicate::WeaklyExponential,
        Predicate::WexpSolvable,
        Predicate::MinimalWexpNonsolvable,
        Predicate::Exponent,
        Predicate::Solvable,
        Predicate::Nilpotent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Exponential => "exponential",
            Predicate::ExpTrivial => "exp-trivial",
            Predicate::ExpSimple => "exp-simple",
            Predicate::WeaklyExponential => "weakly-exponential",
            Predicate::WexpSolvable => "wexp-solvable",
            Predicate::MinimalWexpNonsolvable => "minimal-wexp-nonsolvable",
            Predicate::Exponent => "exponent",
            Predicate::Solvable => "solvable",
            Predicate::Nilpotent => "nilpotent",
        }
    }

    pub fn needs_subgroup(self) -> bool {
        matches!(
            self,
            Predicate::Exponential | Predicate::ExpTrivial | Predicate::WeaklyExponential
        )
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown predicate {s:?}")))
    }
}

fn group_info(b: &BuiltGroup) -> GroupInfo {
    GroupInfo {
        spec: b.spec.clone(),
        degree: b.group.degree(),
        order: b.group.order(),
    }
}

struct Outcome {
    verdict: Verdict,
    value: Option<u64>,
    certificate: Certificate,
}

fn shortcut(verdict: Verdict, reason: impl Into<String>) -> Outcome {
    Outcome {
        verdict,
        value: None,
        certificate: Certificate::Shortcut { reason: reason.into() },
    }
}

fn evaluate(b: &BuiltGroup, predicate: Predicate, subgroup: Option<&str>, caps: &Caps) -> Result<Outcome> {
    let g = &b.group;
    let sub_gens = match (predicate.needs_subgroup(), subgroup) {
        (true, None) => {
            return Err(Error::invalid(format!(
                "predicate {} needs --subgroup generators",
                predicate.name()
            )))
        }
        (true, Some(text)) => {
            let gens = parse_generators(text, g.degree())?;
            for s in &gens {
                if !g.contains(s)? {
                    return Err(Error::NotMember);
                }
            }
            Some(gens)
        }
        (false, _) => None,
    };
    let from_report = |r: crate::report::PredicateReport| Outcome {
        verdict: r.verdict,
        value: None,
        certificate: r.certificate,
    };
    Ok(match predicate {
        Predicate::WexpSolvable => from_report(is_wexp_solvable(g, caps, &b.hints)?),
        Predicate::MinimalWexpNonsolvable => from_report(is_minimal_wexp_nonsolvable(g, caps, &b.hints)?),
        Predicate::Exponent => {
            let e = exponent(g, caps)?;
            Outcome {
                verdict: Verdict::True,
                value: Some(e),
                certificate: Certificate::Shortcut {
                    reason: format!("lcm of the orders of all {} elements", g.order()),
                },
            }
        }
        _ => {
            let ex = Exhaustive::new(g, caps)?;
            let h = sub_gens.map(|gens| ex.table.subgroup_from_permutations(&gens)).transpose()?;
            match predicate {
                Predicate::Exponential => from_report(is_exponential(&ex, h.as_ref().unwrap())?),
                Predicate::WeaklyExponential => from_report(is_weakly_exponential(&ex, h.as_ref().unwrap())?),
                Predicate::ExpTrivial => {
                    let h = h.unwrap();
                    let v = is_exp_trivial(&ex, &h)?;
                    shortcut(
                        Verdict::from_bool(v),
                        format!("exp(G) = {}, |G:H| = {}", ex.exponent(), ex.order() / h.order),
                    )
                }
                Predicate::ExpSimple => from_report(is_exp_simple_quotient(&ex)?),
                Predicate::Solvable => {
                    let orders: Vec<String> = ex.derived_series().iter().map(|s| s.order.to_string()).collect();
                    shortcut(
                        Verdict::from_bool(ex.is_solvable()),
                        format!("derived series orders {}", orders.join(" > ")),
                    )
                }
                Predicate::Nilpotent => {
                    let orders: Vec<String> =
                        ex.lower_central_series().iter().map(|s| s.order.to_string()).collect();
                    shortcut(
                        Verdict::from_bool(ex.is_nilpotent()),
                        format!("lower central series orders {}", orders.join(" > ")),
                    )
                }
                _ => unreachable!(),
            }
        }
    })
}

/// Runs one predicate. Input errors come back as `Err` (exit code 2);
/// cap overflows become an `unknown_over_cap` report (exit code 3).
pub fn run_check(spec: &str, predicate: &str, subgroup: Option<&str>, caps: &Caps) -> Result<(Report, i32)> {
    let start = Instant::now();
    let predicate: Predicate = predicate.parse()?;
    let b = build_group(spec, caps)?;
    let outcome = match evaluate(&b, predicate, subgroup, caps) {
        Ok(o) => o,
        Err(e) if e.is_over_cap() => shortcut(Verdict::Unknown, e.to_string()),
        Err(e) => return Err(e),
    };
    let code = if outcome.verdict == Verdict::Unknown {
        EXIT_UNKNOWN
    } else {
        EXIT_OK
    };
    Ok((
        Report {
            group: group_info(&b),
            predicate: predicate.name().to_string(),
            verdict: outcome.verdict,
            value: outcome.value,
            certificate: outcome.certificate,
            timings: Timings {
                total_ms: start.elapsed().as_secs_f64() * 1000.0,
            },
            tool_version: TOOL_VERSION.to_string(),
            caps: *caps,
        },
        code,
    ))
}

// ---- survey -----------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Agreement {
    Agree,
    Disagree,
    Unconfirmed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub q: u64,
    pub p: u64,
    pub d: u32,
    pub order: u128,
    pub classifier: bool,
    pub route: PslRoute,
    pub computed: Verdict,
    /// `exhaustive` when the whole lattice was checked, `witness` when a
    /// witness decided the row, `none` otherwise.
    pub mode: String,
    pub status: Agreement,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Certificate>,
    pub timing_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub q_max: u64,
    pub full_cap: u128,
    pub rows: Vec<SurveyRow>,
    pub disagreements: usize,
    pub unconfirmed: usize,
    pub tool_version: String,
    pub caps: Caps,
}

/// Classifier against computation for every prime power `4 ≤ q ≤ q_max`.
/// Groups of order at most `full_cap` are decided exhaustively.
pub fn run_survey_psl(q_max: u64, full_cap: u128, caps: &Caps) -> Result<(SurveyReport, i32)> {
    if q_max > caps.field_bound {
        return Err(Error::OverCap {
            what: "q_max (field bound)",
            size: q_max as u128,
            cap: caps.field_bound as u128,
        });
    }
    let mut run_caps = *caps;
    run_caps.lattice_cap = full_cap;
    run_caps.element_cap = caps.element_cap.max(full_cap);
    let mut rows = Vec::new();
    for q in 4..=q_max {
        let Ok(class) = psl2_wexp_classifier(q) else {
            continue;
        };
        let start = Instant::now();
        let psl = Psl2::new(q, &run_caps)?;
        let hints = psl.structured_subgroups();
        let r = is_wexp_solvable(&psl.group, &run_caps, &hints)?;
        let mode = match (&r.verdict, &r.certificate) {
            (Verdict::True, _) => "exhaustive",
            (Verdict::False, _) => "witness",
            _ => "none",
        };
        let status = match r.verdict.as_bool() {
            None => Agreement::Unconfirmed,
            Some(v) if v == class.verdict => Agreement::Agree,
            Some(_) => Agreement::Disagree,
        };
        let witness = (r.verdict == Verdict::False).then(|| r.certificate.clone());
        rows.push(SurveyRow {
            q,
            p: class.p,
            d: class.d,
            order: psl.group.order(),
            classifier: class.verdict,
            route: class.route,
            computed: r.verdict,
            mode: mode.to_string(),
            status,
            witness,
            timing_ms: start.elapsed().as_secs_f64() * 1000.0,
        });
    }
    let disagreements = rows.iter().filter(|r| r.status == Agreement::Disagree).count();
    let unconfirmed = rows.iter().filter(|r| r.status == Agreement::Unconfirmed).count();
    let code = if disagreements > 0 { EXIT_DISAGREE } else { EXIT_OK };
    Ok((
        SurveyReport {
            q_max,
            full_cap,
            rows,
            disagreements,
            unconfirmed,
            tool_version: TOOL_VERSION.to_string(),
            caps: run_caps,
        },
        code,
    ))
}

// ---- density ----------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub n_max: u64,
    pub rows: Vec<DensityRow>,
    pub timings: Timings,
    pub tool_version: String,
}

pub fn run_density(n_max: u64, caps: &Caps) -> Result<DensityReport> {
    let start = Instant::now();
    let rows = density_checkpoints(n_max, caps)?;
    Ok(DensityReport {
        n_max,
        rows,
        timings: Timings {
            total_ms: start.elapsed().as_secs_f64() * 1000.0,
        },
        tool_version: TOOL_VERSION.to_string(),
    })
}

// ---- lattice ----------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeView {
    Subgroups,
    Normals,
    Maximals,
    Classes,
}

impl FromStr for LatticeView {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subgroups" => Ok(LatticeView::Subgroups),
            "normals" => Ok(LatticeView::Normals),
            "maximals" => Ok(LatticeView::Maximals),
            "classes" => Ok(LatticeView::Classes),
            _ => Err(Error::invalid(format!("unknown lattice view {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupEntry {
    pub index: usize,
    pub order: u64,
    pub group_index: u64,
    pub class_size: u64,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementClassEntry {
    pub index: usize,
    pub representative: String,
    pub size: u64,
    pub element_order: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub group: GroupInfo,
    pub what: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub subgroups: Vec<SubgroupEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub element_classes: Vec<ElementClassEntry>,
    pub timings: Timings,
    pub tool_version: String,
    pub caps: Caps,
}

pub fn run_lattice(spec: &str, what: &str, caps: &Caps) -> Result<LatticeReport> {
    let start = Instant::now();
    let view: LatticeView = what.parse()?;
    let b = build_group(spec, caps)?;
    let ex = Exhaustive::new(&b.group, caps)?;
    let n = ex.order();
    let gens_text = |gens: &[u32]| -> Vec<String> {
        ex.table.permutations(gens).iter().map(|p| p.to_string()).collect()
    };
    let mut subgroups = Vec::new();
    let mut element_classes = Vec::new();
    match view {
        LatticeView::Classes => {
            for i in 0..ex.classes.len() {
                element_classes.push(ElementClassEntry {
                    index: i,
                    representative: ex.classes.reps[i].to_string(),
                    size: ex.classes.sizes[i],
                    element_order: ex.classes.orders[i],
                });
            }
        }
        LatticeView::Normals => {
            for (i, s) in ex.normal_subgroups().iter().enumerate() {
                subgroups.push(SubgroupEntry {
                    index: i,
                    order: s.order,
                    group_index: n / s.order,
                    class_size: 1,
                    generators: gens_text(&s.generators),
                });
            }
        }
        LatticeView::Subgroups | LatticeView::Maximals => {
            let lattice = SubgroupLattice::build(&ex, caps)?;
            let chosen: Vec<usize> = if view == LatticeView::Maximals {
                lattice.maximal_indices()
            } else {
                (0..lattice.len()).collect()
            };
            for i in chosen {
                let s = &lattice.classes[i];
                subgroups.push(SubgroupEntry {
                    index: i,
                    order: s.order,
                    group_index: n / s.order,
                    class_size: lattice.class_sizes[i],
                    generators: gens_text(&s.generators),
                });
            }
        }
    }
    Ok(LatticeReport {
        group: group_info(&b),
        what: what.to_string(),
        subgroups,
        element_classes,
        timings: Timings {
            total_ms: start.elapsed().as_secs_f64() * 1000.0,
        },
        tool_version: TOOL_VERSION.to_string(),
        caps: *caps,
    })
}

// ---- certificates -----------------------------------------------------------

/// Accepts a full `check` report, a survey report, or a bare certificate.
/// Returns one line per certificate found.
pub fn verify_document(json: &str) -> std::result::Result<Vec<String>, String> {
    // Parsed straight from text: u128 fields do not survive a detour
    // through serde_json::Value.
    #[derive(Deserialize)]
    struct ReportDoc {
        certificate: Certificate,
    }
    #[derive(Deserialize)]
    struct RowDoc {
        #[serde(default)]
        witness: Option<Certificate>,
    }
    #[derive(Deserialize)]
    struct SurveyDoc {
        rows: Vec<RowDoc>,
    }
    let value: serde_json::Value = serde_json::from_str(json).map_err(|e| format!("invalid JSON: {e}"))?;
    let bad = |e: serde_json::Error| format!("not a certificate: {e}");
    let certs: Vec<Certificate> = if value.get("rows").is_some() {
        let doc: SurveyDoc = serde_json::from_str(json).map_err(bad)?;
        doc.rows.into_iter().filter_map(|r| r.witness).collect()
    } else if value.get("certificate").is_some() {
        vec![serde_json::from_str::<ReportDoc>(json).map_err(bad)?.certificate]
    } else {
        vec![serde_json::from_str(json).map_err(bad)?]
    };
    certs.iter().map(verify_certificate).collect()
}

// ---- human-readable rendering -----------------------------------------------

pub fn render_report(r: &Report) -> String {
    let mut s = format!(
        "group      {} (degree {}, order {})\npredicate  {}\nverdict    {}\n",
        r.group.spec, r.group.degree, r.group.order, r.predicate, r.verdict
    );
    if let Some(v) = r.value {
        s += &format!("value      {v}\n");
    }
    s += &render_certificate(&r.certificate);
    s += &format!("time       {:.1} ms\n", r.timings.total_ms);
    s
}

pub fn render_certificate(c: &Certificate) -> String {
    match c {
        Certificate::Witness(w) => format!(
            "witness    H = {} (order {}, index {})\n           x = {}\n           y = x^{} = {}\n           reason: {}\n",
            w.subgroup_label,
            w.subgroup_order,
            w.index,
            w.x.cycles,
            w.index,
            w.y.cycles,
            serde_json::to_string(&w.reason).unwrap_or_default()
        ),
        Certificate::ExponentialNontrivial { index, exponent, .. } => {
            format!("witness    exponential subgroup of index {index}, exp(G) = {exponent}\n")
        }
        Certificate::QuotientExponent {
            quotient_exponent,
            exponent,
            ..
        } => format!("witness    proper quotient of exponent {quotient_exponent}, exp(G) = {exponent}\n"),
        Certificate::QuotientWitness { witness, .. } => format!(
            "witness    a proper quotient of order {} fails:\n{}",
            witness.group_order,
            render_certificate(&Certificate::Witness(witness.clone()))
        ),
        Certificate::Exhaustion { checked, summary } => format!("proof      {summary} ({checked} checked)\n"),
        Certificate::Shortcut { reason } => format!("note       {reason}\n"),
    }
}

pub fn render_survey(r: &SurveyReport) -> String {
    let mut s = format!(
        "{:>5} {:>3} {:>2} {:>10} {:>10} {:>12} {:>16} {:>10} {:>11}\n",
        "q", "p", "d", "order", "classifier", "route", "computed", "mode", "status"
    );
    for row in &r.rows {
        let status = match row.status {
            Agreement::Agree => "AGREE".to_string(),
            Agreement::Disagree => "DISAGREE".to_string(),
            Agreement::Unconfirmed => format!("UNCONFIRMED-{}", row.classifier),
        };
        s += &format!(
            "{:>5} {:>3} {:>2} {:>10} {:>10} {:>12} {:>16} {:>10} {:>11}\n",
            row.q,
            row.p,
            row.d,
            row.order,
            row.classifier,
            row.route.to_string(),
            row.computed.to_string(),
            row.mode,
            status
        );
    }
    s += &format!(
        "{} rows, {} disagreements, {} unconfirmed\n",
        r.rows.len(),
        r.disagreements,
        r.unconfirmed
    );
    s
}

pub fn render_density(r: &DensityReport) -> String {
    let mut s = format!("{:>12} {:>10} {:>10} {:>8}\n", "n", "w(n)", "pi(n)", "ratio");
    for row in &r.rows {
        s += &format!("{:>12} {:>10} {:>10} {:>8.4}\n", row.n, row.w, row.pi, row.ratio);
    }
    s
}

pub fn render_lattice(r: &LatticeReport) -> String {
    let mut s = format!(
        "group {} (degree {}, order {}): {}\n",
        r.group.spec, r.group.degree, r.group.order, r.what
    );
    for e in &r.subgroups {
        s += &format!(
            "{:>4}  order {:>6}  index {:>6}  conjugates {:>5}  gens {}\n",
            e.index,
            e.order,
            e.group_index,
            e.class_size,
            e.generators.join(", ")
        );
    }
    for e in &r.element_classes {
        s += &format!(
            "{:>4}  size {:>6}  order {:>4}  rep {}\n",
            e.index, e.size, e.element_order, e.representative
        );
    }
    s
}
