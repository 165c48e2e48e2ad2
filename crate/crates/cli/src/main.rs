//! Command-line front end: parses JSON inputs, dispatches to the library,
//! and emits deterministic JSON reports with exact certificates.
//!
//! Exit codes: 0 on success, 2 when a theorem hypothesis could not be
//! certified (no parabolic, no companion, density failure), 1 on errors.

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use tracefield::arithmetic::{
    compact_place_trace_bound, is_admissible, is_integral, maximal_order, trace_dichotomy,
    CMExtension, DichotomyVerdict, IntegralBasis,
};
use tracefield::error::Error;
use tracefield::hermitian::HermitianForm;
use tracefield::isometry::classify;
use tracefield::json as wire;
use tracefield::json::Mode;
use tracefield::matrix::Matrix;
use tracefield::numberfield::{subfield_generated, FieldElement, NumberField, SubfieldBasis};
use tracefield::rational::format_rational;
use tracefield::tetrahedron::{
    conjugate_z1, invariant_consistent, invariant_field, invariants, reconstruct_p3, vertex_t,
};
use tracefield::trace_field::{
    cube_trace_field, rationalize_group, trace_field, trace_list, zariski_density_check,
    GroupGenerators, TraceFieldReport,
};
use tracefield::Result;

#[derive(Parser)]
#[command(
    name = "tracefield",
    about = "Trace fields, cross-ratio invariants and arithmeticity checks for subgroups of SU(2,1)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct Common {
    /// Input JSON file
    input: PathBuf,
    /// Write the report to this file as well as stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Scalar mode when the input does not declare one
    #[arg(long, value_parser = ["exact", "float"])]
    mode: Option<String>,
    /// Residual tolerance for float-mode checks
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a special-unitary matrix by its fixed points
    Classify(Common),
    /// Trace field of a finitely generated group (exact mode)
    TraceField {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Trace field of cubes of words (exact mode)
    CubeTraceField {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Span check: do word matrices reach dimension 9
    DensityCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Conjugate the group into SU(2,1, Tr Gamma) with certificates
    Rationalize {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Include the word basis, Gram matrix and recovery coefficients
        #[arg(long)]
        verbose: bool,
    },
    /// Cross-ratio invariants of the tetrahedra in a complex
    TetraInvariants(Common),
    /// Reconstruct each fourth vertex from the first three and the invariant
    TetraReconstruct(Common),
    /// Invariant field of a complex (exact mode)
    TetraField {
        #[command(flatten)]
        common: Common,
        /// Also compute the vertex-coordinate field and compare
        #[arg(long)]
        normalized: bool,
    },
    /// Admissibility of a pair (H, E/F) with per-place signatures
    ArithCheck(Common),
    /// Trace-field dichotomy for subgroups of SU(H, O_E)
    ArithDichotomy {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Waive the integrality requirement on generators
        #[arg(long)]
        allow_nonintegral: bool,
        /// Powers to check for the compact-place trace bound
        #[arg(long, default_value_t = 0)]
        bound_powers: usize,
    },
    /// Compose two number fields into one primitive extension
    ComposeField {
        /// First field descriptor JSON file
        a: PathBuf,
        /// Second field descriptor JSON file
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, out_path) = match run(cli.command) {
        Ok(pair) => pair,
        Err(e) => {
            let kind = error_kind(&e);
            let report = json!({ "error": e.to_string(), "kind": kind });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            return if kind == "hypothesis_not_certified" {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            };
        }
    };
    let text = serde_json::to_string_pretty(&report).unwrap();
    println!("{text}");
    if let Some(path) = out_path {
        if let Err(e) = std::fs::write(&path, format!("{text}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::SUCCESS
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::HypothesisNotCertified(_) => "hypothesis_not_certified",
        Error::NotFound(_) => "hypothesis_not_certified",
        Error::Schema { .. } => "schema",
        Error::FloatModeUnsupported => "float_mode_unsupported",
        _ => "error",
    }
}

fn run(cmd: Command) -> Result<(Value, Option<PathBuf>)> {
    match cmd {
        Command::Classify(c) => { let out = c.out.clone(); cmd_classify(c).map(|v| (v, out)) }
        Command::TraceField { common, depth } => {
            let out = common.out.clone();
            cmd_trace_field(common, depth, false).map(|v| (v, out))
        }
        Command::CubeTraceField { common, depth } => {
            let out = common.out.clone();
            cmd_trace_field(common, depth, true).map(|v| (v, out))
        }
        Command::DensityCheck { common, depth } => {
            let out = common.out.clone();
            cmd_density(common, depth).map(|v| (v, out))
        }
        Command::Rationalize {
            common,
            depth,
            verbose,
        } => {
            let out = common.out.clone();
            cmd_rationalize(common, depth, verbose).map(|v| (v, out))
        }
        Command::TetraInvariants(c) => { let out = c.out.clone(); cmd_tetra_invariants(c).map(|v| (v, out)) }
        Command::TetraReconstruct(c) => { let out = c.out.clone(); cmd_tetra_reconstruct(c).map(|v| (v, out)) }
        Command::TetraField { common, normalized } => {
            let out = common.out.clone();
            cmd_tetra_field(common, normalized).map(|v| (v, out))
        }
        Command::ArithCheck(c) => { let out = c.out.clone(); cmd_arith_check(c).map(|v| (v, out)) }
        Command::ArithDichotomy {
            common,
            depth,
            allow_nonintegral,
            bound_powers,
        } => {
            let out = common.out.clone();
            cmd_arith_dichotomy(common, depth, allow_nonintegral, bound_powers).map(|v| (v, out))
        }
        Command::ComposeField { a, b, out } => cmd_compose(a, b).map(|v| (v, out)),
    }
}

fn load(path: &PathBuf) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::schema("", format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::schema("", format!("invalid JSON: {e}")))
}

fn detect_mode(c: &Common, input: &Value) -> Result<Mode> {
    if input.get("mode").is_some() {
        return wire::mode_of(input, "");
    }
    match c.mode.as_deref() {
        Some("float") => Ok(Mode::Float),
        _ => Ok(Mode::Exact),
    }
}

fn parse_exact_field(input: &Value) -> Result<Arc<NumberField>> {
    wire::parse_field(wire::get(input, "field", "")?, "/field")
}

fn exact_generators(
    input: &Value,
    field: &Arc<NumberField>,
) -> Result<Vec<Matrix<FieldElement>>> {
    let arr = wire::as_array(wire::get(input, "generators", "")?, "/generators")?;
    let mut gens = vec![];
    for (k, g) in arr.iter().enumerate() {
        gens.push(wire::parse_exact_matrix(g, field, &format!("/generators/{k}"))?);
    }
    Ok(gens)
}

fn float_generators(input: &Value) -> Result<Vec<Matrix<Complex64>>> {
    let arr = wire::as_array(wire::get(input, "generators", "")?, "/generators")?;
    let mut gens = vec![];
    for (k, g) in arr.iter().enumerate() {
        gens.push(wire::parse_float_matrix(g, &format!("/generators/{k}"))?);
    }
    Ok(gens)
}

fn subfield_to_json(sub: &SubfieldBasis) -> Value {
    json!({
        "dimension": sub.dimension(),
        "basis": sub
            .basis()
            .iter()
            .map(wire::exact_scalar_to_json)
            .collect::<Vec<_>>(),
    })
}

fn trace_report_to_json(tf: &TraceFieldReport) -> Value {
    json!({
        "field": subfield_to_json(&tf.field),
        "dims_by_depth": tf.dims,
        "stabilized": tf.stabilized,
    })
}

fn cmd_classify(c: Common) -> Result<Value> {
    let input = load(&c.input)?;
    match detect_mode(&c, &input)? {
        Mode::Exact => {
            let field = parse_exact_field(&input)?;
            let m = wire::parse_exact_matrix(wire::get(&input, "matrix", "")?, &field, "/matrix")?;
            let sample = field.from_i64(0);
            let form = wire::parse_form(
                input.get("form"),
                &sample,
                |v, p| wire::parse_exact_scalar(v, &field, p),
                "/form",
                0.0,
            )?;
            let class = classify(&m, &form, 0.0)?;
            Ok(json!({
                "mode": "exact",
                "tag": class.tag.as_str(),
                "unit_eigenvalue": class.unit_eigenvalue.as_ref().map(wire::exact_scalar_to_json),
                "fixed_points": class
                    .boundary_fixed_points
                    .iter()
                    .map(wire::exact_boundary_point_to_json)
                    .collect::<Vec<_>>(),
            }))
        }
        Mode::Float => {
            let m = wire::parse_float_matrix(wire::get(&input, "matrix", "")?, "/matrix")?;
            let sample = Complex64::new(0.0, 0.0);
            let form = wire::parse_form(
                input.get("form"),
                &sample,
                |v, p| wire::parse_float_scalar(v, p),
                "/form",
                c.tol,
            )?;
            let class = classify(&m, &form, c.tol)?;
            Ok(json!({
                "mode": "float",
                "tag": class.tag.as_str(),
                "eigenvalues": class
                    .eigenvalues_approx
                    .iter()
                    .map(|z| json!([z.re, z.im]))
                    .collect::<Vec<_>>(),
                "unit_eigenvalue": class
                    .unit_eigenvalue
                    .as_ref()
                    .map(wire::float_scalar_to_json),
                "fixed_points": class
                    .boundary_fixed_points
                    .iter()
                    .map(wire::float_boundary_point_to_json)
                    .collect::<Vec<_>>(),
            }))
        }
    }
}

fn cmd_trace_field(c: Common, depth: usize, cubes: bool) -> Result<Value> {
    let input = load(&c.input)?;
    match detect_mode(&c, &input)? {
        Mode::Exact => {
            let field = parse_exact_field(&input)?;
            let gens = exact_generators(&input, &field)?;
            let sample = field.from_i64(0);
            let form = wire::parse_form(
                input.get("form"),
                &sample,
                |v, p| wire::parse_exact_scalar(v, &field, p),
                "/form",
                0.0,
            )?;
            let group = GroupGenerators::new(gens, form, 0.0)?;
            let tf = if cubes {
                cube_trace_field(&group, depth)?
            } else {
                trace_field(&group, depth)?
            };
            Ok(json!({
                "mode": "exact",
                "cubes": cubes,
                "depth": depth,
                "trace_field": trace_report_to_json(&tf),
            }))
        }
        Mode::Float => {
            // float mode cannot recognize a field; report the raw traces
            let gens = float_generators(&input)?;
            let sample = Complex64::new(0.0, 0.0);
            let form = wire::parse_form(
                input.get("form"),
                &sample,
                |v, p| wire::parse_float_scalar(v, p),
                "/form",
                c.tol,
            )?;
            let group = GroupGenerators::new(gens, form, c.tol)?;
            let mut traces = vec![];
            for (w, t) in trace_list(&group, depth)? {
                let t = if cubes {
                    // trace of the cube of the word matrix
                    let m = w.evaluate(group.gens())?;
                    m.pow(3)?.trace()
                } else {
                    t
                };
                traces.push(json!({
                    "word": wire::word_to_json(&w),
                    "trace": [t.re, t.im],
                }));
            }
            Ok(json!({
                "mode": "float",
                "cubes": cubes,
                "depth": depth,
                "traces": traces,
            }))
        }
    }
}

fn cmd_density(c: Common, depth: usize) -> Result<Value> {
    let input = load(&c.input)?;
    let report = match detect_mode(&c, &input)? {
        Mode::Exact => {
            let field = parse_exact_field(&input)?;
            let gens = exact_generators(&input, &field)?;
            let sample = field.from_i64(0);
            let form = wire::parse_form(
                input.get("form"),
                &sample,
                |v, p| wire::parse_exact_scalar(v, &field, p),
                "/form",
                0.0,
            )?;
            let group = GroupGenerators::new(gens, form, 0.0)?;
            zariski_density_check(&group, depth)?
        }
        Mode::Float => {
            let gens = float_generators(&input)?;
            let sample = Complex64::new(0.0, 0.0);
            let form = wire::parse_form(
                input.get("form"),
                &sample,
                |v, p| wire::parse_float_scalar(v, p),
                "/form",
                c.tol,
            )?;
            let group = GroupGenerators::new(gens, form, c.tol)?;
            zariski_density_check(&group, depth)?
        }
    };
    Ok(json!({
        "dense": report.dense,
        "rank": report.rank,
        "depth": depth,
        "witness": report.witness.iter().map(wire::word_to_json).collect::<Vec<_>>(),
    }))
}

fn cmd_rationalize(c: Common, depth: usize, verbose: bool) -> Result<Value> {
    let input = load(&c.input)?;
    if detect_mode(&c, &input)? == Mode::Float {
        return Err(Error::FloatModeUnsupported);
    }
    let field = parse_exact_field(&input)?;
    let gens = exact_generators(&input, &field)?;
    let sample = field.from_i64(0);
    let form = wire::parse_form(
        input.get("form"),
        &sample,
        |v, p| wire::parse_exact_scalar(v, &field, p),
        "/form",
        0.0,
    )?;
    let group = GroupGenerators::new(gens, form, 0.0)?;
    let out = rationalize_group(&group, depth)?;
    out.verify(&group)?;
    let mut report = json!({
        "mode": "exact",
        "depth": depth,
        "case": out.case_tag.label(),
        "extra_conjugation": out.case_tag.extra_conjugation,
        "parabolic_word": wire::word_to_json(&out.parabolic_word),
        "companion_word": wire::word_to_json(&out.companion_word),
        "trace_field": trace_report_to_json(&out.trace_field),
        "conjugator": wire::exact_matrix_to_json(&out.conjugator),
        "conjugated_generators": out
            .conjugated_gens
            .iter()
            .map(wire::exact_matrix_to_json)
            .collect::<Vec<_>>(),
        "certificates": out
            .certificates
            .iter()
            .map(|gen| {
                Value::Array(
                    gen.iter()
                        .map(|cert| {
                            Value::Array(
                                cert.iter()
                                    .map(|r| Value::String(format_rational(r)))
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect::<Vec<_>>(),
        "verified": true,
    });
    if verbose {
        report["basis_words"] = Value::Array(
            out.basis_words.iter().map(wire::word_to_json).collect(),
        );
        report["gram"] = wire::exact_matrix_to_json(&out.gram);
        report["recovery_coefficients"] = Value::Array(
            out.recovery_coeffs
                .iter()
                .map(|c| Value::Array(c.iter().map(wire::exact_scalar_to_json).collect()))
                .collect(),
        );
    }
    Ok(report)
}

fn cmd_tetra_invariants(c: Common) -> Result<Value> {
    let input = load(&c.input)?;
    match detect_mode(&c, &input)? {
        Mode::Exact => {
            let field = parse_exact_field(&input)?;
            let tetrahedra = wire::parse_exact_tetrahedra(&input, &field, "")?;
            let mut out = vec![];
            for t in &tetrahedra {
                let inv = invariants(t, 0.0)?;
                let consistent = conjugate_z1(&inv)? == inv.z1.conj();
                out.push(json!({
                    "z1": wire::exact_scalar_to_json(&inv.z1),
                    "z1p": wire::exact_scalar_to_json(&inv.z1p),
                    "z1t": wire::exact_scalar_to_json(&inv.z1t),
                    "z1tp": wire::exact_scalar_to_json(&inv.z1tp),
                    "compatible": consistent,
                }));
            }
            Ok(json!({ "mode": "exact", "invariants": out }))
        }
        Mode::Float => {
            let tetrahedra = wire::parse_float_tetrahedra(&input, "")?;
            let mut out = vec![];
            for t in &tetrahedra {
                let inv = invariants(t, c.tol)?;
                out.push(json!({
                    "z1": [inv.z1.re, inv.z1.im],
                    "z1p": [inv.z1p.re, inv.z1p.im],
                    "z1t": [inv.z1t.re, inv.z1t.im],
                    "z1tp": [inv.z1tp.re, inv.z1tp.im],
                    "compatible": invariant_consistent(&inv, (c.tol * 1e2).max(1e-7)),
                    "vertex_t": vertex_t(&inv).ok().map(|v| json!([v.re, v.im])),
                }));
            }
            Ok(json!({ "mode": "float", "invariants": out }))
        }
    }
}

fn cmd_tetra_reconstruct(c: Common) -> Result<Value> {
    let input = load(&c.input)?;
    match detect_mode(&c, &input)? {
        Mode::Exact => {
            let field = parse_exact_field(&input)?;
            let tetrahedra = wire::parse_exact_tetrahedra(&input, &field, "")?;
            let sample = field.from_i64(0);
            let mut out = vec![];
            for t in &tetrahedra {
                let inv = invariants(t, 0.0)?;
                let lifts = t.lifts(&sample);
                let p3 = reconstruct_p3(&lifts[0], &lifts[1], &lifts[2], &inv, 0.0)?;
                let matches = p3.projectively_equal(&lifts[3], 1e-9);
                out.push(json!({
                    "reconstructed_lift": p3
                        .entries
                        .iter()
                        .map(wire::exact_scalar_to_json)
                        .collect::<Vec<_>>(),
                    "matches_input": matches,
                }));
            }
            Ok(json!({ "mode": "exact", "reconstructions": out }))
        }
        Mode::Float => {
            let tetrahedra = wire::parse_float_tetrahedra(&input, "")?;
            let sample = Complex64::new(0.0, 0.0);
            let mut out = vec![];
            for t in &tetrahedra {
                let inv = invariants(t, c.tol)?;
                let lifts = t.lifts(&sample);
                let p3 = reconstruct_p3(&lifts[0], &lifts[1], &lifts[2], &inv, c.tol * 1e-3)?;
                let matches = p3.projectively_equal(&lifts[3], 1e-7);
                out.push(json!({
                    "reconstructed_lift": p3
                        .entries
                        .iter()
                        .map(wire::float_scalar_to_json)
                        .collect::<Vec<_>>(),
                    "matches_input": matches,
                }));
            }
            Ok(json!({ "mode": "float", "reconstructions": out }))
        }
    }
}

fn cmd_tetra_field(c: Common, normalized: bool) -> Result<Value> {
    let input = load(&c.input)?;
    if detect_mode(&c, &input)? == Mode::Float {
        return Err(Error::FloatModeUnsupported);
    }
    let field = parse_exact_field(&input)?;
    let tetrahedra = wire::parse_exact_tetrahedra(&input, &field, "")?;
    let report = invariant_field(&tetrahedra, &field, normalized)?;
    Ok(json!({
        "mode": "exact",
        "normalized": normalized,
        "invariant_field": subfield_to_json(&report.invariant_field),
        "coordinate_field": report.coordinate_field.as_ref().map(subfield_to_json),
        "fields_equal": report.fields_equal,
    }))
}

fn cmd_arith_check(c: Common) -> Result<Value> {
    let input = load(&c.input)?;
    let field = parse_exact_field(&input)?;
    let h = wire::parse_exact_matrix(wire::get(&input, "h", "")?, &field, "/h")?;
    let ext = CMExtension::new(field.clone())?;
    let pair = is_admissible(&h, &ext)?;
    let mut conj_forms = vec![];
    for place in 0..ext.place_count() {
        match ext.galois_conjugate_form(&h, place) {
            Ok(m) => conj_forms.push(wire::exact_matrix_to_json(&m)),
            Err(_) => conj_forms.push(Value::Null),
        }
    }
    Ok(json!({
        "mode": "exact",
        "admissible": pair.admissible,
        "signatures": pair.signatures.iter().map(|&(p, q)| json!([p, q])).collect::<Vec<_>>(),
        "places": (0..ext.place_count())
            .map(|k| {
                let z = ext.place_approx(k);
                json!([z.re, z.im])
            })
            .collect::<Vec<_>>(),
        "fixed_field": subfield_to_json(ext.fixed_field()),
        "conjugate_forms": conj_forms,
    }))
}

fn cmd_arith_dichotomy(
    c: Common,
    depth: usize,
    allow_nonintegral: bool,
    bound_powers: usize,
) -> Result<Value> {
    let input = load(&c.input)?;
    let field = parse_exact_field(&input)?;
    let gens = exact_generators(&input, &field)?;
    let sample = field.from_i64(0);
    let h = match input.get("h") {
        Some(hv) => HermitianForm::new(
            wire::parse_exact_matrix(hv, &field, "/h")?,
            0.0,
        )?,
        None => HermitianForm::siegel(&sample),
    };
    // E defaults to the whole ambient field; F to the fixed field of
    // conjugation, computed through the CM structure
    let e_sub = match input.get("e_gens") {
        Some(ev) => {
            let arr = wire::as_array(ev, "/e_gens")?;
            let mut elems = vec![];
            for (i, x) in arr.iter().enumerate() {
                elems.push(wire::parse_exact_scalar(x, &field, &format!("/e_gens/{i}"))?);
            }
            subfield_generated(&field, &elems)?
        }
        None => subfield_generated(&field, &[field.generator()])?,
    };
    let ext = CMExtension::new(field.clone())?;
    let f_sub = match input.get("f_gens") {
        Some(fv) => {
            let arr = wire::as_array(fv, "/f_gens")?;
            let mut elems = vec![];
            for (i, x) in arr.iter().enumerate() {
                elems.push(wire::parse_exact_scalar(x, &field, &format!("/f_gens/{i}"))?);
            }
            subfield_generated(&field, &elems)?
        }
        None => {
            // restrict the fixed field to E when E is a proper subfield
            let mut elems = vec![];
            for b in ext.fixed_field().basis() {
                if e_sub.contains(b).is_some() {
                    elems.push(b.clone());
                }
            }
            subfield_generated(&field, &elems)?
        }
    };
    let order: Option<IntegralBasis> = match input.get("integral_basis") {
        Some(bv) => {
            let arr = wire::as_array(bv, "/integral_basis")?;
            let mut elems = vec![];
            for (i, x) in arr.iter().enumerate() {
                elems.push(wire::parse_exact_scalar(
                    x,
                    &field,
                    &format!("/integral_basis/{i}"),
                )?);
            }
            Some(IntegralBasis::from_elements(&field, elems)?)
        }
        None if !allow_nonintegral => Some(maximal_order(&field)?),
        None => None,
    };
    let report = trace_dichotomy(
        &gens,
        &h,
        &e_sub,
        &f_sub,
        order.as_ref(),
        allow_nonintegral,
        depth,
    )?;
    let verdict = match &report.verdict {
        DichotomyVerdict::EqualsE => json!({"kind": "equals_e"}),
        DichotomyVerdict::EqualsF => json!({"kind": "equals_f"}),
        DichotomyVerdict::Violation { word, trace } => json!({
            "kind": "violation",
            "word": wire::word_to_json(word),
            "trace": wire::exact_scalar_to_json(trace),
        }),
        DichotomyVerdict::Undetermined { dims } => json!({
            "kind": "undetermined",
            "dims": dims,
        }),
    };
    let mut out = json!({
        "mode": "exact",
        "depth": depth,
        "verdict": verdict,
        "trace_field_dims": report.trace_field_dims,
        "loxodromic_word": wire::word_to_json(&report.loxodromic_word),
        "integral_checked": report.integral_checked,
    });
    if let Some(o) = &order {
        out["integral_basis"] = Value::Array(
            o.basis().iter().map(wire::exact_scalar_to_json).collect(),
        );
        out["generators_integral"] =
            Value::Array(gens.iter().map(|g| Value::Bool(is_integral(g, o))).collect());
    }
    if bound_powers > 0 && ext.place_count() > 1 {
        let mut bounds = vec![];
        for place in 1..ext.place_count() {
            let mut all_ok = true;
            for g in &gens {
                all_ok &= compact_place_trace_bound(g, &ext, place, bound_powers)?;
            }
            bounds.push(json!({ "place": place, "bounded": all_ok }));
        }
        out["compact_place_trace_bounds"] = Value::Array(bounds);
    }
    Ok(out)
}

fn cmd_compose(a: PathBuf, b: PathBuf) -> Result<Value> {
    let av = load(&a)?;
    let bv = load(&b)?;
    let fa = wire::parse_field(&av, "/a")?;
    let fb = wire::parse_field(&bv, "/b")?;
    let (field, alpha, beta) = NumberField::compose(&fa, &fb)?;
    Ok(json!({
        "field": wire::field_to_json(&field),
        "alpha": wire::exact_scalar_to_json(&alpha),
        "beta": wire::exact_scalar_to_json(&beta),
    }))
}
