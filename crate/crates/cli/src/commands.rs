use std::fmt;
use std::path::Path;
use std::sync::Arc;

use pqc_core::bar::{verify_bar as run_bar_checks, BarCheck, BarComplex};
use pqc_core::fingroup::{
    find_isomorphism, make_standard, parse_group, FiniteGroup, GroupAction, GroupError,
};
use pqc_core::pqc::{homology as run_homology, FinitePqc, PqcError};
use pqc_core::schreier::{
    adjoint_check, check_bar_cocycle, check_chain_square, check_cocycle, check_contraction,
    check_mc, comparison_maps, count_equivalence_classes, factor_set, h2_oracle, pseudoaction_of,
    retraction_v, schreier_build, tmc_check, validate_extension, Extension, FactorSet,
    PseudoAction, SchreierError,
};
use pqc_core::Verdict;
use serde_json::json;

use crate::report::{CheckResult, RunReport};
use crate::Coefficients;

const MAX_BAR_GENERATORS: usize = 2_000_000;
const H2_SEARCH_BOUND: u128 = 1 << 24;
const EQUIVALENCE_BOUND: usize = 64;

/// Any problem with the inputs; maps to exit code 2.
#[derive(Debug)]
pub struct InputError(String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

macro_rules! input_error_from {
    ($($t:ty),*) => {$(
        impl From<$t> for InputError {
            fn from(e: $t) -> Self {
                InputError(e.to_string())
            }
        }
    )*};
}

input_error_from!(
    GroupError,
    PqcError,
    SchreierError,
    pqc_core::bar::BarError,
    serde_json::Error
);

pub struct CommandOutput {
    pub report: RunReport,
    pub summary: Vec<String>,
}

fn read(path: &Path) -> Result<Vec<u8>, InputError> {
    std::fs::read(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

fn text(bytes: &[u8], path: &Path) -> Result<String, InputError> {
    String::from_utf8(bytes.to_vec())
        .map_err(|_| InputError(format!("{} is not UTF-8", path.display())))
}

/// A standard group name, or else a group file.
fn load_group(spec: &str) -> Result<(FiniteGroup, Vec<u8>), InputError> {
    if let Ok(g) = make_standard(spec) {
        return Ok((g, spec.as_bytes().to_vec()));
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(InputError(format!(
            "{spec:?} is neither a standard group nor a file"
        )));
    }
    let bytes = read(path)?;
    let group = parse_group(&text(&bytes, path)?)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok((group, bytes))
}

fn verdict_witness<W>(v: &Verdict<W>, show: impl Fn(&W) -> String) -> Option<String> {
    v.witness().map(show)
}

pub fn verify_bar(
    argv: Vec<String>,
    group: &str,
    max_degree: usize,
    checks: &[String],
) -> Result<CommandOutput, InputError> {
    let mut report = RunReport::new(argv);
    let (g, bytes) = load_group(group)?;
    report.digest("group", &bytes);
    let top = (g.order() as u128).saturating_pow(max_degree as u32 + 1);
    if max_degree == 0 || top > MAX_BAR_GENERATORS as u128 {
        return Err(InputError(format!(
            "max degree {max_degree} is out of range for a group of order {}",
            g.order()
        )));
    }
    let checks: Vec<BarCheck> = if checks.is_empty() {
        BarCheck::ALL.to_vec()
    } else {
        checks.iter().map(|c| c.parse()).collect::<Result<_, _>>()?
    };
    let summary = vec![format!(
        "group {} (order {}), degrees -1..{max_degree}",
        g.name(),
        g.order()
    )];
    let bar = Arc::new(BarComplex::new(Arc::new(g), max_degree));
    let result = run_bar_checks(&bar, &checks);
    for entry in &result.entries {
        let mut check =
            CheckResult::new(entry.check.name(), entry.instances, entry.failures.clone());
        check.degree = Some(entry.degree);
        report.push(check);
    }
    report.data = json!({ "group": result.group, "maxDegree": max_degree });
    Ok(CommandOutput { report, summary })
}

pub fn homology(argv: Vec<String>, pqc: &Path, degree: i32) -> Result<CommandOutput, InputError> {
    let mut report = RunReport::new(argv);
    let bytes = read(pqc)?;
    report.digest("pqc", &bytes);
    let x = FinitePqc::parse(&text(&bytes, pqc)?)?;
    let h = run_homology(&x, degree)?;
    let classes = h.class_labels();
    let mut summary = vec![format!(
        "H_{degree}: {} classes ({} cycles)",
        h.class_count(),
        h.universe.len()
    )];
    summary.extend(
        classes
            .iter()
            .enumerate()
            .map(|(i, c)| format!("  class {i}: {}", c.join(", "))),
    );
    report.data = json!({ "degree": degree, "classCount": h.class_count(), "classes": classes });
    Ok(CommandOutput { report, summary })
}

fn triple(g: &FiniteGroup, third: &FiniteGroup, (x, y, z): (usize, usize, usize)) -> String {
    format!("({}, {}, {})", g.label(x), g.label(y), third.label(z))
}

fn factor_set_labels(
    n: &FiniteGroup,
    g: &FiniteGroup,
    f: &FactorSet,
) -> serde_json::Map<String, serde_json::Value> {
    let mut out = serde_json::Map::new();
    for x in g.elements() {
        for y in g.elements() {
            out.insert(
                format!("{},{}", g.label(x), g.label(y)),
                n.label(f.get(x, y)).into(),
            );
        }
    }
    out
}

pub fn ext_analyze(argv: Vec<String>, path: &Path) -> Result<CommandOutput, InputError> {
    let mut report = RunReport::new(argv);
    let bytes = read(path)?;
    report.digest("ext", &bytes);
    let ext = Extension::parse(&text(&bytes, path)?)?;
    let (n, e, g) = (ext.n.clone(), ext.e.clone(), ext.g.clone());
    let (no, eo, go) = (n.order(), e.order(), g.order());
    let mut summary = vec![format!(
        "extension {} -> {} -> {}",
        n.name(),
        e.name(),
        g.name()
    )];

    let valid = validate_extension(&ext);
    report.push(CheckResult::single(
        "extension",
        no + eo + go,
        valid.witness().cloned(),
    ));
    if !valid.is_pass() {
        return Ok(CommandOutput { report, summary });
    }
    let u = ext.section()?;
    let v = retraction_v(&ext, &u)?;
    let f = factor_set(&ext, &u, &v);
    let l = pseudoaction_of(&ext, &u, &v)?;
    let bar = BarComplex::new(g.clone(), 3);
    let maps = comparison_maps(&ext, &u, &l, &f, &bar);
    let tmc = tmc_check(&n, &g, &l, &f);

    report.push(CheckResult::single(
        "contraction",
        go + eo + no,
        check_contraction(&ext, &u, &v).into_witness(),
    ));
    report.push(CheckResult::single(
        "adjoint",
        go + no + go + eo,
        adjoint_check(&ext, &u, &v).into_witness(),
    ));
    report.push(CheckResult::single(
        "cocycle",
        go.pow(3),
        verdict_witness(&check_cocycle(&n, &g, &l, &f), |&t| triple(&g, &g, t)),
    ));
    report.push(CheckResult::single(
        "mc",
        go * go * no,
        verdict_witness(&check_mc(&n, &g, &l, &f), |&t| triple(&g, &n, t)),
    ));
    report.push(CheckResult::single(
        "barCocycle",
        go.pow(4),
        check_bar_cocycle(&ext, &maps, &bar).into_witness(),
    ));
    report.push(CheckResult::single(
        "chainSquare",
        go.pow(3),
        check_chain_square(&ext, &maps, &bar).into_witness(),
    ));
    report.push(CheckResult::single(
        "tmc.mc",
        go * go * no,
        verdict_witness(&tmc.mc, |&t| triple(&g, &n, t)),
    ));
    report.push(CheckResult::single(
        "tmc.equivariant",
        go.pow(3),
        tmc.equivariant.witness().cloned(),
    ));
    report.push(CheckResult::single(
        "tmc.compositeZero",
        go.pow(4),
        tmc.composite_zero.witness().cloned(),
    ));

    let labels = factor_set_labels(&n, &g, &f);
    summary.extend(
        g.elements()
            .flat_map(|x| g.elements().map(move |y| (x, y)))
            .map(|(x, y)| {
                format!(
                    "  f({},{}) = {} [{}]",
                    g.label(x),
                    g.label(y),
                    n.label(f.get(x, y)),
                    f.get(x, y)
                )
            }),
    );
    report.data = json!({
        "section": u,
        "retraction": v,
        "f": f.values,
        "L": l.maps,
        "factorSet": labels,
        "tmc": { "mc": tmc.mc.is_pass(), "equivariant": tmc.equivariant.is_pass(), "compositeZero": tmc.composite_zero.is_pass() },
    });
    Ok(CommandOutput { report, summary })
}

struct LoadedCoefficients {
    n: Arc<FiniteGroup>,
    g: Arc<FiniteGroup>,
    maps: Option<Vec<Vec<usize>>>,
}

fn load_coefficients(
    report: &mut RunReport,
    c: &Coefficients,
) -> Result<LoadedCoefficients, InputError> {
    let (n, nb) = load_group(&c.n)?;
    let (g, gb) = load_group(&c.g)?;
    report.digest("n", &nb);
    report.digest("g", &gb);
    let maps = match (&c.action, c.trivial_action) {
        (Some(path), _) => {
            let bytes = read(path)?;
            report.digest("action", &bytes);
            let l: PseudoAction = serde_json::from_str(&text(&bytes, path)?)?;
            Some(l.maps)
        }
        (None, true) => None,
        (None, false) => return Err(InputError("give --action FILE or --trivial-action".into())),
    };
    Ok(LoadedCoefficients {
        n: Arc::new(n),
        g: Arc::new(g),
        maps,
    })
}

fn genuine_action(c: &LoadedCoefficients) -> Result<GroupAction, InputError> {
    Ok(match &c.maps {
        Some(maps) => GroupAction::new(c.g.clone(), c.n.clone(), maps.clone())?,
        None => GroupAction::trivial(c.g.clone(), c.n.clone()),
    })
}

const NAMED_CANDIDATES: &[&str] = &[
    "trivial", "c2", "c3", "c4", "v4", "c5", "c6", "s3", "c7", "c8", "d4", "q8", "c9", "c10", "d5",
    "c11", "c12", "d6", "c13", "c14", "d7", "c15", "c16", "d8",
];

/// A familiar name for `group` up to isomorphism, when one is known.
fn recognize(group: &FiniteGroup) -> Option<String> {
    let named = NAMED_CANDIDATES
        .iter()
        .map(|&n| (n.to_string(), make_standard(n).expect("standard name")));
    let products = [
        ("c2", "c4"),
        ("c2", "v4"),
        ("c3", "c3"),
        ("c2", "c6"),
        ("c3", "s3"),
        ("c4", "c4"),
        ("c2", "c8"),
        ("c2", "d4"),
        ("c2", "q8"),
    ]
    .into_iter()
    .map(|(a, b)| {
        let p = FiniteGroup::direct_product(&make_standard(a).unwrap(), &make_standard(b).unwrap());
        (format!("{a}x{b}"), p)
    });
    named
        .chain(products)
        .filter(|(_, h)| h.order() == group.order())
        .find(|(_, h)| find_isomorphism(group, h).is_some())
        .map(|(name, _)| name)
}

pub fn ext_build(
    argv: Vec<String>,
    c: &Coefficients,
    f_arg: &str,
) -> Result<CommandOutput, InputError> {
    let mut report = RunReport::new(argv);
    let coeff = load_coefficients(&mut report, c)?;
    let (n, g) = (coeff.n.clone(), coeff.g.clone());
    let l = PseudoAction {
        maps: coeff
            .maps
            .clone()
            .unwrap_or_else(|| PseudoAction::trivial(&n, &g).maps),
    };
    let f = if Path::new(f_arg).is_file() {
        let path = Path::new(f_arg);
        let bytes = read(path)?;
        report.digest("f", &bytes);
        serde_json::from_str::<FactorSet>(&text(&bytes, path)?)?
    } else {
        report.digest("f", f_arg.as_bytes());
        FactorSet::parse_inline(f_arg, &n, &g)?
    };
    f.check_shape(&n, &g)?;
    l.validate(&n, &g)?;
    let (no, go) = (n.order(), g.order());
    report.push(CheckResult::single(
        "cocycle",
        go.pow(3),
        verdict_witness(&check_cocycle(&n, &g, &l, &f), |&t| triple(&g, &g, t)),
    ));
    report.push(CheckResult::single(
        "mc",
        go * go * no,
        verdict_witness(&check_mc(&n, &g, &l, &f), |&t| triple(&g, &n, t)),
    ));
    let mut summary = Vec::new();
    match schreier_build(&n, &g, &l, &f) {
        Ok(ext) => {
            let name = recognize(&ext.e);
            summary.push(format!(
                "built a group of order {}{}",
                ext.e.order(),
                name.as_ref()
                    .map(|n| format!(", isomorphic to {n}"))
                    .unwrap_or_default()
            ));
            report.push(CheckResult::single("group", ext.e.order().pow(3), None));
            report.data = json!({ "group": ext.e.to_file(), "isomorphicTo": name });
        }
        Err(SchreierError::NotAGroup(e)) => {
            summary.push("the pair law is not a group".into());
            report.push(CheckResult::single(
                "group",
                (no * go).pow(3),
                Some(e.to_string()),
            ));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(CommandOutput { report, summary })
}

pub fn ext_classify(argv: Vec<String>, c: &Coefficients) -> Result<CommandOutput, InputError> {
    let mut report = RunReport::new(argv);
    let coeff = load_coefficients(&mut report, c)?;
    let action = genuine_action(&coeff)?;
    let h2 = h2_oracle(&coeff.g, &coeff.n, &action, H2_SEARCH_BOUND)?;
    let l = PseudoAction::from_action(&action);
    let built = h2
        .cocycles
        .iter()
        .map(|f| schreier_build(&coeff.n, &coeff.g, &l, f))
        .collect::<Result<Vec<_>, _>>()?;
    let classes = count_equivalence_classes(&built, EQUIVALENCE_BOUND)?;
    let witness = (classes != h2.class_count).then(|| {
        format!(
            "{} cohomology classes but {classes} extension classes",
            h2.class_count
        )
    });
    report.push(CheckResult::single(
        "classCountsAgree",
        built.len(),
        witness,
    ));
    let summary = vec![format!(
        "H^2({}, {}): {} classes from {} cocycles; {classes} extension classes",
        coeff.g.name(),
        coeff.n.name(),
        h2.class_count,
        h2.cocycle_count
    )];
    report.data = json!({
        "classCount": h2.class_count,
        "cocycleCount": h2.cocycle_count,
        "coboundaryCount": h2.coboundary_count,
        "extensionClasses": classes,
        "representatives": h2.representatives.iter().map(|f| &f.values).collect::<Vec<_>>(),
    });
    Ok(CommandOutput { report, summary })
}

pub fn h2(argv: Vec<String>, c: &Coefficients) -> Result<CommandOutput, InputError> {
    let mut report = RunReport::new(argv);
    let coeff = load_coefficients(&mut report, c)?;
    let action = genuine_action(&coeff)?;
    let h2 = h2_oracle(&coeff.g, &coeff.n, &action, H2_SEARCH_BOUND)?;
    let summary = vec![format!(
        "H^2({}, {}): {} classes",
        coeff.g.name(),
        coeff.n.name(),
        h2.class_count
    )];
    report.data = json!({
        "classCount": h2.class_count,
        "cocycleCount": h2.cocycle_count,
        "coboundaryCount": h2.coboundary_count,
        "representatives": h2.representatives.iter().map(|f| &f.values).collect::<Vec<_>>(),
    });
    Ok(CommandOutput { report, summary })
}
