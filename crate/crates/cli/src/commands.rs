use std::f64::consts::TAU;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

use catrot::circuit::to_text;
use catrot::gf2n::{builtin_poly, default_poly, find_primitive, FieldPoly};
use catrot::sim::{
    apply_phase_dlog, catalyst_state, clone_catalyst, frobenius_shift, qpe_prepare, verify_catalysis, write_state,
    CatalysisMode,
};
use catrot::synth::{
    approximate_angle, build_controlled_uf, build_variable_rotation, estimate_resources, select_kickbacks,
    KickbackPlan, SynthesisResult,
};
use catrot::{Complex64, State};
use serde_json::{json, Value};

use crate::output::Failure;
use crate::{FieldArgs, Method, Mode, PrepArgs, PrimpolyArgs, ResourcesArgs, SynthArgs, VerifyArgs};

const DEFAULT_DEGREE: u32 = 3;

type Outcome = Result<Value, Failure>;

fn resolve_field(args: &FieldArgs) -> Result<FieldPoly, Failure> {
    match (&args.poly, args.n) {
        (Some(text), n) => {
            let f = FieldPoly::parse(text)?;
            match n {
                Some(n) if n != f.degree() => Err(Failure::Usage(format!(
                    "degree {n} does not match --poly of degree {}",
                    f.degree()
                ))),
                _ => Ok(f),
            }
        }
        (None, n) => Ok(default_poly(n.unwrap_or(DEFAULT_DEGREE))?),
    }
}

fn poly_json(f: &FieldPoly) -> Value {
    json!({
        "n": f.degree(),
        "poly": f.to_text(),
        "hex": f.to_hex(),
        "q_f": f.q_set(),
        "q_f_size": f.q_set().len(),
    })
}

pub fn primpoly(args: PrimpolyArgs) -> Outcome {
    if let Some(text) = &args.check {
        let f = FieldPoly::parse(text)?;
        if let Some(n) = args.n.filter(|&n| n != f.degree()) {
            return Err(Failure::Usage(format!("degree {n} does not match polynomial of degree {}", f.degree())));
        }
        return Ok(poly_json(&f));
    }
    let n = args.n.unwrap_or(DEFAULT_DEGREE);
    let f = match args.max_terms {
        // the table entry is preferred whenever it fits the budget
        Some(t) => match builtin_poly(n) {
            Some(b) if b.as_binary().term_count() <= t => b,
            _ => find_primitive(n, t)?,
        },
        None => default_poly(n)?,
    };
    Ok(poly_json(&f))
}

/// Grid index `b` and the angle it came from.
struct Angle {
    b: u64,
    requested_theta: Option<f64>,
    error: f64,
}

fn parse_angle(spec: &str, f: &FieldPoly) -> Result<Angle, Failure> {
    let spec = spec.trim();
    let modulus = f.group_order();
    if let Some(b) = spec.strip_prefix("b=") {
        let b: u64 = b.trim().parse().map_err(|_| Failure::Usage(format!("invalid angle index '{b}'")))?;
        if b >= modulus {
            return Err(Failure::Usage(format!("angle index b = {b} must be below 2^n - 1 = {modulus}")));
        }
        return Ok(Angle { b, requested_theta: None, error: 0.0 });
    }
    let raw = spec.strip_prefix("theta=").unwrap_or(spec);
    let theta: f64 = raw.trim().parse().map_err(|_| Failure::Usage(format!("invalid angle '{spec}'")))?;
    let (b, error) = approximate_angle(theta, f.degree())?;
    Ok(Angle { b, requested_theta: Some(theta), error })
}

pub fn synth(args: SynthArgs) -> Outcome {
    let f = resolve_field(&args.field)?;
    let angle = parse_angle(&args.angle, &f)?;
    let modulus = f.group_order();
    // b = 0 needs no kickback at all, so it goes through the (empty) plan path
    let (result, plan): (SynthesisResult, Option<KickbackPlan>) = if args.mode == Mode::Variable || angle.b == 0 {
        let plan = select_kickbacks(angle.b, args.a, modulus)?;
        (build_variable_rotation(&f, &plan, args.parallel)?, Some(plan))
    } else {
        (build_controlled_uf(&f), None)
    };
    if let Some(path) = &args.out {
        fs::write(path, to_text(&result.circuit))?;
    }
    let kickbacks: Vec<Value> = match &plan {
        Some(p) => p
            .bits
            .iter()
            .map(|&t| json!({"register": t, "k": (p.a as u128 * (1u128 << t) % modulus as u128) as u64}))
            .collect(),
        None => vec![json!({"register": 0, "k": angle.b})],
    };
    Ok(json!({
        "poly": f.to_text(),
        "mode": mode_name(args.mode),
        "angle": {
            "b": angle.b,
            "modulus": modulus,
            "theta": TAU * angle.b as f64 / modulus as f64,
            "requested_theta": angle.requested_theta,
            "error": angle.error,
        },
        "report": result.report,
        "gates": result.circuit.len(),
        "layout": result.circuit.layout,
        "kickbacks": kickbacks,
        "plan": plan,
    }))
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Fixed => "fixed",
        Mode::Variable => "variable",
    }
}

/// Parses `x`, `yi`, `x+yi` or `x-yi` (`j` also accepted).
fn parse_complex(s: &str) -> Option<Complex64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return s.parse().ok().map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(p) => (body[..p].parse().ok()?, &body[p..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse().ok()?,
    };
    Some(Complex64::new(re, im))
}

fn parse_alpha_beta(s: &str) -> Result<(Complex64, Complex64), Failure> {
    let bad = || Failure::Usage(format!("invalid --alpha-beta '{s}', expected ALPHA,BETA"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((parse_complex(a).ok_or_else(bad)?, parse_complex(b).ok_or_else(bad)?))
}

pub fn verify(args: VerifyArgs) -> Outcome {
    if !(args.tolerance > 0.0) {
        return Err(Failure::Usage(format!("tolerance must be positive, got {}", args.tolerance)));
    }
    let f = resolve_field(&args.field)?;
    let (alpha, beta) = match &args.alpha_beta {
        Some(s) => parse_alpha_beta(s)?,
        None => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            (Complex64::new(h, 0.0), Complex64::new(h, 0.0))
        }
    };
    let mode = match args.mode {
        Mode::Fixed => CatalysisMode::Fixed { k: args.k },
        Mode::Variable => CatalysisMode::Variable {
            plan: select_kickbacks(args.k, args.a, f.group_order())?,
            parallel: args.parallel,
        },
    };
    let report = verify_catalysis(&f, alpha, beta, &mode)?;
    let passed = report.within(args.tolerance);
    let mut payload = serde_json::to_value(&report).expect("report serializes");
    let obj = payload.as_object_mut().expect("report is an object");
    obj.insert("poly".into(), json!(f.to_text()));
    obj.insert("mode".into(), json!(mode_name(args.mode)));
    obj.insert("k".into(), json!(args.k));
    obj.insert("tolerance".into(), json!(args.tolerance));
    obj.insert("passed".into(), json!(passed));
    if passed {
        Ok(payload)
    } else {
        Err(Failure::Tolerance { payload, message: format!("catalysis check failed at tolerance {}", args.tolerance) })
    }
}

pub fn resources(args: ResourcesArgs) -> Outcome {
    let f = resolve_field(&args.field)?;
    let unconstrained = estimate_resources(&f, None)?;
    let constrained = args.kappa.map(|k| estimate_resources(&f, Some(k))).transpose()?;
    Ok(json!({
        "poly": f.to_text(),
        "unconstrained": unconstrained,
        "constrained": constrained,
    }))
}

fn save(dir: Option<&Path>, name: &str, state: &State, files: &mut Vec<String>) -> Result<(), Failure> {
    if let Some(dir) = dir {
        fs::create_dir_all(dir)?;
        write_state(state, BufWriter::new(File::create(dir.join(name))?))?;
        files.push(name.to_string());
    }
    Ok(())
}

pub fn prep(args: PrepArgs) -> Outcome {
    let f = resolve_field(&args.field)?;
    let n = f.degree();
    let modulus = f.group_order();
    let dir = args.out_dir.as_deref();
    let mut files = Vec::new();
    let mut payload = match args.method {
        Method::Frobenius => {
            let res = clone_catalyst::<f64>(&f, args.k, args.copies)?;
            // psi_k -> psi_{k 2^t} for every t, from the same starting state
            let psi = catalyst_state::<f64>(&f, args.k)?;
            let mut ladder = Vec::new();
            for t in 0..n {
                let mut s = psi.clone();
                frobenius_shift(&mut s, &f, t)?;
                let k_t = (args.k as u128 * (1u128 << t) % modulus as u128) as u64;
                ladder.push(json!({"t": t, "k": k_t, "fidelity": s.fidelity(&catalyst_state(&f, k_t)?)?}));
            }
            save(dir, "original.qstv", &res.original, &mut files)?;
            for (i, c) in res.copies.iter().enumerate() {
                save(dir, &format!("copy_{i}.qstv"), c, &mut files)?;
            }
            json!({
                "mul_count": res.mul_count,
                "fidelities": res.fidelities,
                "original_fidelity": res.original_fidelity,
                "restored_fidelity": res.restored_fidelity,
                "min_split_fidelity": res.min_split_fidelity,
                "frobenius_ladder": ladder,
            })
        }
        Method::Qpe => {
            let out = qpe_prepare::<f64>(&f, args.t_bits.unwrap_or(n + 3), args.seed)?;
            save(dir, "qpe.qstv", &out.state, &mut files)?;
            json!({"outcome": out.outcome, "k": out.k, "fidelity": out.fidelity})
        }
        Method::Dlog => {
            if args.k >= modulus {
                return Err(Failure::Usage(format!("k = {} must be below 2^n - 1 = {modulus}", args.k)));
            }
            let out = qpe_prepare::<f64>(&f, args.t_bits.unwrap_or(n + 3), args.seed)?;
            let shift = (args.k as i128 - out.k as i128).rem_euclid(modulus as i128) as i64;
            let mut state = out.state;
            apply_phase_dlog(&mut state, &f, shift)?;
            let fidelity = state.fidelity(&catalyst_state(&f, args.k)?)?;
            save(dir, "dlog.qstv", &state, &mut files)?;
            json!({
                "outcome": out.outcome,
                "sampled_k": out.k,
                "sampled_fidelity": out.fidelity,
                "shift": shift,
                "k": args.k,
                "fidelity": fidelity,
            })
        }
    };
    let obj = payload.as_object_mut().expect("payload is an object");
    obj.insert("poly".into(), json!(f.to_text()));
    obj.insert("method".into(), json!(format!("{:?}", args.method).to_lowercase()));
    obj.insert("seed".into(), json!(args.seed));
    obj.insert("files".into(), json!(files));
    Ok(payload)
}
