use std::io::Read;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};

use reidemeister_core::decomp::{orthogonal_gs, symplectic_block_gs};
use reidemeister_core::fieldmap::Tower;
use reidemeister_core::matrix::{
    gen_orthogonal_parametric, gen_orthogonal_rational, gen_symplectic_parametric, gen_symplectic_rational, GroupKind,
    Mat,
};
use reidemeister_core::ratfunc::{RatFn, VarRegistry};
use reidemeister_core::twist::{
    census as run_census, expected_normal_form, full_witness, verify_witness, Base, Check, TwistClass, Verdicts,
};

use crate::codec::*;
use crate::error::CliError;
use crate::{CensusArgs, DecomposeArgs, GenArgs, Outcome, VerifyArgs, WitnessArgs};

type Result<T> = std::result::Result<T, CliError>;

fn read_json(path: &Path) -> Result<Value> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::usage(format!("cannot read standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: malformed JSON: {e}", path.display())))
}

fn millis(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// The `--base` flag wins over the input's recorded base; `Q` otherwise.
fn resolve_base(flag: Option<crate::BaseArg>, input: &Value) -> Result<Base> {
    if let Some(b) = flag {
        return Ok(b.into());
    }
    match input.get("base") {
        None => Ok(Base::Rationals),
        Some(v) => v
            .as_str()
            .and_then(Base::from_name)
            .ok_or_else(|| CliError::input("\"base\" must be \"Q\" or \"Q(t)\"")),
    }
}

fn read_input_matrix(path: &Path, base: Option<crate::BaseArg>) -> Result<(Mat<RatFn>, Base, VarRegistry)> {
    let v = read_json(path)?;
    let base = resolve_base(base, &v)?;
    let reg = base.registry();
    let a = ratmat_from_json(&v, &reg)?;
    if !a.is_square() {
        return Err(reidemeister_core::Error::Dimension(format!("{}x{} matrix is not square", a.rows(), a.cols())).into());
    }
    Ok((a, base, reg))
}

fn checks_to_json(checks: &[Check]) -> Value {
    Value::Array(checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed })).collect())
}

fn verdicts_to_json(v: &Verdicts, reg: &VarRegistry) -> Value {
    let spots: Vec<Value> = v
        .spots
        .iter()
        .map(|s| {
            json!({
                "point": point_to_json(&s.point, reg),
                "resampled": s.resampled,
                "identity": s.identity,
                "group": s.group,
                "passed": s.passed(),
            })
        })
        .collect();
    json!({
        "exact": checks_to_json(&v.exact),
        "spot": spots,
        "spot_error": v.spot_error,
        "exact_pass": v.exact_pass(),
        "spot_pass": v.spots_pass(),
        "all_pass": v.all_pass(),
    })
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn spot_summary(v: &Verdicts) -> String {
    let passed = v.spots.iter().filter(|s| s.passed()).count();
    match &v.spot_error {
        Some(e) => format!("{passed}/{} spot checks pass ({e})", v.spots.len()),
        None => format!("{passed}/{} spot checks pass", v.spots.len()),
    }
}

pub fn decompose(args: &DecomposeArgs) -> Result<Outcome> {
    let t0 = Instant::now();
    let kind: GroupKind = args.group.into();
    let (a, base, reg) = read_input_matrix(&args.input, args.base)?;
    kind.check_dim(a.rows())?;
    let mut field = Tower::with_max_depth(args.common.max_tower_depth);
    let x = lift(&a);
    let lq = match kind {
        GroupKind::Symplectic => symplectic_block_gs(&x, &mut field)?,
        _ => orthogonal_gs(&x, &mut field)?,
    };
    let checks = vec![
        Check::new("L Q = X", lq.l.matmul(&lq.q)? == x),
        Check::new(
            match kind {
                GroupKind::Symplectic => "Q Ω Qᵀ = Ω",
                _ => "Q Qᵀ = I",
            },
            match kind {
                GroupKind::Symplectic => lq.q.is_symplectic(),
                _ => lq.q.is_orthogonal(),
            },
        ),
        Check::new(
            "L (block) lower triangular",
            match kind {
                GroupKind::Symplectic => lq.l.is_block_lower_triangular(),
                _ => lq.l.is_lower_triangular(),
            },
        ),
    ];
    let doc = json!({
        "verb": "decompose",
        "group": kind.name(),
        "base": base.name(),
        "input": ratmat_to_json(&a, &reg),
        "registry": registry_to_json(&reg),
        "field": field_to_json(&field, &reg),
        "L": elem_mat_to_json(&lq.l, &reg),
        "Q": elem_mat_to_json(&lq.q, &reg),
        "pivot_radicands": lq.radicands.iter().map(|r| elem_to_json(r, &reg)).collect::<Vec<_>>(),
        "pivot_roots": lq.roots.iter().map(|r| elem_to_json(r, &reg)).collect::<Vec<_>>(),
        "checks": checks_to_json(&checks),
        "timings": { "total_ms": millis(t0) },
    });
    let failure = checks
        .iter()
        .find(|c| !c.passed)
        .map(|c| CliError::from(reidemeister_core::Error::CheckFailed(c.name.clone())));
    let summary = format!(
        "decompose {} {}x{} over {}: tower depth {}, checks {}",
        kind.name(),
        a.rows(),
        a.cols(),
        base.name(),
        field.depth(),
        pass_word(failure.is_none())
    );
    Ok(Outcome { document: doc, summary, failure })
}

pub fn witness(args: &WitnessArgs) -> Result<Outcome> {
    let t0 = Instant::now();
    let kind: GroupKind = args.group.into();
    let (a, base, reg) = read_input_matrix(&args.input, args.base)?;
    let w = full_witness(&a, kind, reg, args.common.max_tower_depth)?;
    let witness_ms = millis(t0);
    let t1 = Instant::now();
    let v = verify_witness(&w.a, kind, &w.x_tot, &w.e, &w.phi, &w.field, &w.reg, args.spot_checks, args.seed);
    let verify_ms = millis(t1);
    let reg = &w.reg;
    let valid = w.all_checks_pass() && v.exact_pass();
    let doc = json!({
        "verb": "witness",
        "group": kind.name(),
        "base": base.name(),
        "seed": args.seed,
        "spot_checks": args.spot_checks,
        "input": ratmat_to_json(&w.a, reg),
        "registry": registry_to_json(reg),
        "field": field_to_json(&w.field, reg),
        "map": map_to_json(&w.phi, reg),
        "matrices": {
            "X": elem_mat_to_json(&w.x, reg),
            "L": elem_mat_to_json(&w.l, reg),
            "Q": elem_mat_to_json(&w.q, reg),
            "D": elem_mat_to_json(&w.d, reg),
            "conjugator": elem_mat_to_json(&w.conjugator, reg),
            "E": elem_mat_to_json(&w.e, reg),
            "X_tot": elem_mat_to_json(&w.x_tot, reg),
        },
        "class": w.class.name(),
        "checks": checks_to_json(&w.checks),
        "verdicts": verdicts_to_json(&v, reg),
        "valid": valid,
        "timings": { "witness_ms": witness_ms, "verify_ms": verify_ms },
    });
    let failure = (!(valid && v.all_pass())).then(|| CliError::Domain {
        code: "check-failed",
        message: "witness report did not pass every check".into(),
    });
    let summary = format!(
        "witness {} {}x{} over {}: class {}, tower depth {}, exact checks {}, {}",
        kind.name(),
        w.a.rows(),
        w.a.cols(),
        base.name(),
        w.class.name(),
        w.field.depth(),
        pass_word(valid),
        spot_summary(&v)
    );
    Ok(Outcome { document: doc, summary, failure })
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let t0 = Instant::now();
    let r = read_json(&args.report)?;
    let kind = GroupKind::from_name(get_str(&r, "group")?).ok_or_else(|| CliError::input("unknown group kind"))?;
    let reg = registry_from_json(get(&r, "registry")?)?;
    let mut field = field_from_json(get(&r, "field")?, &reg, args.common.max_tower_depth)?;
    let a = ratmat_from_json(get(&r, "input")?, &reg)?;
    kind.check_dim(a.rows())?;
    let (mut phi, recorded_layers) = map_from_json(get(&r, "map")?, &reg)?;
    let mats = get(&r, "matrices")?;
    let x_tot = elem_mat_from_json(get(mats, "X_tot")?, &reg, &field)?;
    let e = elem_mat_from_json(get(mats, "E")?, &reg, &field)?;

    let mut checks = Vec::new();
    let layers_ok = recorded_layers.len() <= field.depth() && {
        let mut images = Vec::with_capacity(recorded_layers.len());
        for k in 1..=recorded_layers.len() {
            let root = field.radical(k);
            images.push(phi.apply(&mut field, &root)?);
        }
        recorded_layers
            .iter()
            .zip(&images)
            .all(|(rec, img)| elem_from_json(rec, &reg, &field).is_ok_and(|x| x == *img))
    };
    checks.push(Check::new("recorded layer images match the branch rule", layers_ok));
    let class = TwistClass::from_name(get_str(&r, "class")?).ok_or_else(|| CliError::input("unknown class tag"))?;
    let class_ok = expected_normal_form(&a, kind).is_ok_and(|(_, c)| c == class);
    checks.push(Check::new("class tag matches A", class_ok));

    let v = verify_witness(&a, kind, &x_tot, &e, &phi, &field, &reg, args.spot_checks, args.seed);
    let pass = v.all_pass() && checks.iter().all(|c| c.passed);
    let doc = json!({
        "verb": "verify",
        "group": kind.name(),
        "seed": args.seed,
        "spot_checks": args.spot_checks,
        "checks": checks_to_json(&checks),
        "verdicts": verdicts_to_json(&v, &reg),
        "valid": v.exact_pass() && checks.iter().all(|c| c.passed),
        "all_pass": pass,
        "timings": { "total_ms": millis(t0) },
    });
    let failure = (!pass).then(|| CliError::Domain {
        code: "verification-failed",
        message: "one or more verdicts failed".into(),
    });
    let summary = format!(
        "verify {}: exact checks {}, {}",
        kind.name(),
        pass_word(v.exact_pass() && checks.iter().all(|c| c.passed)),
        spot_summary(&v)
    );
    Ok(Outcome { document: doc, summary, failure })
}

fn census_member_json(m: &reidemeister_core::twist::CensusMember, reg: &VarRegistry) -> Value {
    json!({
        "seed": m.seed,
        "input": ratmat_to_json(&m.a, reg),
        "det_sign": m.det_sign,
        "class": m.class.name(),
        "E": elem_mat_to_json(&m.e, reg),
        "witness_checks_pass": m.witness_checks_pass,
    })
}

pub fn census(args: &CensusArgs) -> Result<Outcome> {
    let t0 = Instant::now();
    let kind: GroupKind = args.group.into();
    let base: Base = args.base.into();
    let rep = run_census(kind, base, args.dim, args.samples, args.seed, args.common.max_tower_depth)?;
    let reg = base.registry();
    let pass = rep.all_pass();
    let doc = json!({
        "verb": "census",
        "group": kind.name(),
        "base": base.name(),
        "dim": args.dim,
        "samples": args.samples,
        "seed": args.seed,
        "classes": rep.classes,
        "expected_classes": rep.expected_classes(),
        "class_matches_det": rep.class_matches_det,
        "probes_distinct": rep.probes_distinct,
        "members": rep.members.iter().map(|m| census_member_json(m, &reg)).collect::<Vec<_>>(),
        "probes": rep.probes.iter().map(|m| census_member_json(m, &reg)).collect::<Vec<_>>(),
        "invariance": checks_to_json(&rep.invariance),
        "pass": pass,
        "timings": { "total_ms": millis(t0) },
    });
    let failure = (!pass).then(|| CliError::Domain {
        code: "census-mismatch",
        message: format!("found {} classes, expected {}", rep.classes, rep.expected_classes()),
    });
    let summary = format!(
        "census {} dim {} over {}: {} classes (expected {}) from {} samples, {}",
        kind.name(),
        args.dim,
        base.name(),
        rep.classes,
        rep.expected_classes(),
        args.samples,
        pass_word(pass)
    );
    Ok(Outcome { document: doc, summary, failure })
}

pub fn gen(args: &GenArgs) -> Result<Outcome> {
    let kind: GroupKind = args.group.into();
    kind.check_dim(args.dim)?;
    let base: Base = args.base.into();
    let n = args.dim;
    let s = args.seed;
    let q = |m: Mat<reidemeister_core::ratfunc::Rational>| m.map(RatFn::from_rational);
    let a = match (base, kind) {
        (Base::Rationals, GroupKind::Orthogonal) => q(gen_orthogonal_rational(n, s, None)),
        (Base::Rationals, GroupKind::SpecialOrthogonal) => q(gen_orthogonal_rational(n, s, Some(1))),
        (Base::Rationals, GroupKind::Symplectic) => q(gen_symplectic_rational(n, s)),
        (Base::RationalFunctions, GroupKind::Orthogonal) => gen_orthogonal_parametric(n, s, None, 0),
        (Base::RationalFunctions, GroupKind::SpecialOrthogonal) => gen_orthogonal_parametric(n, s, Some(1), 0),
        (Base::RationalFunctions, GroupKind::Symplectic) => gen_symplectic_parametric(n, s, 0),
    };
    let mut doc = ratmat_to_json(&a, &base.registry());
    let obj = doc.as_object_mut().expect("matrix JSON is an object");
    obj.insert("group".into(), json!(kind.name()));
    obj.insert("base".into(), json!(base.name()));
    obj.insert("seed".into(), json!(s));
    Ok(Outcome {
        document: doc,
        summary: format!("gen {} dim {n} over {} seed {s}", kind.name(), base.name()),
        failure: None,
    })
}
