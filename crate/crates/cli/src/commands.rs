use serde_json::{json, Value};

use logdiv::arrangements::{example9_objects, generic_dn_capped, lemma_order, standard_basis_check};
use logdiv::groebner::{Codim, FreeModuleVector};
use logdiv::logder::{
    direct_sum_check, euler_field, log_derivations, quasi_homogeneous_weights, saito_freeness_test,
    DerivationModule, Freeness,
};
use logdiv::symalg::{
    criterion as run_criterion, pi_injectivity_test, rees_kernel, sym_presentation, torsion_test_symk,
    CriterionOptions, RouteReport, Shape, SymPresentation, TorsionReport,
};
use logdiv::vfilt::{
    compare_v0, default_weight_range, v0_graded_basis, v_membership_with, vk_graded_basis, Comparison,
    GradedOperatorSpace, MembershipMode,
};
use logdiv::{Polynomial, WeylOperator};

use crate::report::{CliError, Report};
use crate::{Check, Mode};

type Out = Result<Report, CliError>;

fn parse_f(src: &str, nvars: Option<usize>) -> Result<Polynomial, CliError> {
    Ok(match nvars {
        Some(n) => Polynomial::parse_in(src, n)?,
        None => Polynomial::parse(src)?,
    })
}

fn field(v: &FreeModuleVector) -> String {
    WeylOperator::vector_field(v.components()).to_string()
}

fn fields(vs: &[FreeModuleVector]) -> Vec<String> {
    vs.iter().map(field).collect()
}

fn ops(space: &GradedOperatorSpace) -> Vec<String> {
    space.basis.iter().map(|b| b.to_string()).collect()
}

fn degrees_json(dm: &DerivationModule) -> Value {
    dm.degrees().map(|d| json!(d)).unwrap_or(Value::Null)
}

fn codim_json(c: Option<Codim>) -> Value {
    match c {
        Some(Codim::Finite(g)) => json!(g),
        Some(Codim::UnitIdeal) => json!("infinite"),
        None => Value::Null,
    }
}

pub fn logder(src: &str, minimal: bool, nvars: Option<usize>) -> Out {
    let f = parse_f(src, nvars)?;
    let mut dm = log_derivations(&f)?;
    if minimal {
        dm = dm.minimalized()?;
    }
    let gens = fields(dm.generators());
    let mut r = Report::new("logder")
        .field("f", f.to_string())
        .field("nvars", f.nvars())
        .field("minimal", minimal)
        .field("generators", gens.clone())
        .field("degrees", degrees_json(&dm))
        .field("relations", dm.first_syzygies().len())
        .line(format!("Der(log f) for f = {f}: {} generators", gens.len()));
    for g in &gens {
        r.push_line(format!("  {g}"));
    }
    Ok(r)
}

pub fn euler(src: &str, nvars: Option<usize>) -> Out {
    let f = parse_f(src, nvars)?;
    let weights = quasi_homogeneous_weights(&f);
    let chi = euler_field(&f)?;
    let chi_s = chi.as_ref().map(|c| c.to_string());
    Ok(Report::new("euler")
        .field("f", f.to_string())
        .field(
            "weights",
            weights.as_ref().map(|(w, _)| json!(w)).unwrap_or(Value::Null),
        )
        .field(
            "degree",
            weights.as_ref().map(|(_, d)| json!(d)).unwrap_or(Value::Null),
        )
        .field("euler", chi_s.clone())
        .line(match chi_s {
            Some(c) => format!("Euler field: {c}"),
            None => "no Euler field: f is not in the ideal of its partials".to_string(),
        }))
}

pub fn freeness(src: &str, nvars: Option<usize>) -> Out {
    let f = parse_f(src, nvars)?;
    let dm = log_derivations(&f)?;
    let r = Report::new("freeness").field("f", f.to_string());
    Ok(match saito_freeness_test(&dm)? {
        Freeness::Free { basis, determinant } => {
            let q = determinant.divide_exact(&f)?.map(|q| q.to_string());
            r.field("free", true)
                .field("basis", fields(&basis))
                .field("determinant", determinant.to_string())
                .field("determinant_over_f", q)
                .line(format!("free; basis determinant {determinant}"))
        }
        Freeness::NotFree { minimal_generators } => r
            .field("free", false)
            .field("minimal_generators", minimal_generators)
            .line(format!(
                "not free: {minimal_generators} minimal generators in {} variables",
                f.nvars()
            )),
        Freeness::Inconclusive(why) => r
            .field("free", Value::Null)
            .field("reason", why.clone())
            .line(format!("inconclusive: {why}")),
    })
}

pub fn v_member(f_src: &str, p_src: &str, k: i64, mode: Mode, nvars: Option<usize>) -> Out {
    let n = match nvars {
        Some(n) => n,
        None => Polynomial::parse(f_src)?
            .nvars()
            .max(WeylOperator::parse(p_src)?.nvars()),
    };
    let f = Polynomial::parse_in(f_src, n)?;
    let p = WeylOperator::parse_in(p_src, n)?;
    let m = match mode {
        Mode::Local => MembershipMode::Local,
        Mode::Global => MembershipMode::Global,
    };
    let member = v_membership_with(&f, &p, k, m)?;
    Ok(Report::new("v0-member")
        .field("f", f.to_string())
        .field("operator", p.to_string())
        .field("k", k)
        .field("mode", format!("{mode:?}").to_lowercase())
        .field("order", p.order())
        .field("member", member)
        .line(format!("{} V_{k}", if member { "in" } else { "not in" })))
}

fn space_report(cmd: &str, f: &Polynomial, space: &GradedOperatorSpace) -> Report {
    let mut r = Report::new(cmd)
        .field("f", f.to_string())
        .field("k", space.level)
        .field("d", space.d)
        .field("w", space.w)
        .field("dim", space.dim())
        .field("basis", ops(space))
        .line(format!(
            "V_{} in order <= {}, weight {}: dimension {}",
            space.level,
            space.d,
            space.w,
            space.dim()
        ));
    for b in &space.basis {
        r.push_line(format!("  {b}"));
    }
    r
}

pub fn v0_basis(src: &str, d: u32, w: i64, compare: bool, nvars: Option<usize>) -> Out {
    let f = parse_f(src, nvars)?;
    let space = v0_graded_basis(&f, d, w)?;
    let mut r = space_report("v0-basis", &f, &space);
    if compare {
        r = match compare_v0(&f, d, w)? {
            Comparison::Equal { dim } => r
                .field("comparison", "equal")
                .field("generated_dim", dim)
                .field("witness", Value::Null)
                .field("verdict", "inconclusive")
                .line(format!(
                    "generated by logarithmic fields in this degree (dimension {dim})"
                )),
            Comparison::Gap {
                v0_dim,
                generated_dim,
                witness,
            } => r
                .field("comparison", "gap")
                .field("generated_dim", generated_dim)
                .field("witness", witness.to_string())
                .field("verdict", "refuted-with-witness")
                .line(format!("gap: dim V_0 = {v0_dim}, generated {generated_dim}"))
                .line(format!("witness: {witness}")),
        };
    }
    Ok(r)
}

/// Compares V_0 with the field-generated operators for every weight in a range, stopping at
/// the first gap.
pub fn v0_scan(src: &str, d: u32, range: Option<(i64, i64)>, nvars: Option<usize>) -> Out {
    let f = parse_f(src, nvars)?;
    let (lo, hi) = match range {
        Some(r) => r,
        None => default_weight_range(&f, d)?,
    };
    let mut r = Report::new("v0-basis")
        .field("f", f.to_string())
        .field("d", d)
        .field("weight_range", vec![lo, hi])
        .line(format!("order <= {d}, weights {lo}..={hi}"));
    let mut scan = Vec::new();
    let mut gap = None;
    for w in lo..=hi {
        match compare_v0(&f, d, w)? {
            Comparison::Equal { dim } => {
                scan.push(json!({ "w": w, "v0_dim": dim, "generated_dim": dim }));
                r.push_line(format!("  w = {w}: equal, dimension {dim}"));
            }
            Comparison::Gap {
                v0_dim,
                generated_dim,
                witness,
            } => {
                scan.push(json!({ "w": w, "v0_dim": v0_dim, "generated_dim": generated_dim }));
                r.push_line(format!(
                    "  w = {w}: gap, dim V_0 = {v0_dim}, generated {generated_dim}"
                ));
                gap = Some((w, witness));
                break;
            }
        }
    }
    r = r.field("scan", scan);
    Ok(match gap {
        Some((w, witness)) => r
            .field("comparison", "gap")
            .field("witness", witness.to_string())
            .field("witness_weight", w)
            .field("verdict", "refuted-with-witness")
            .line(format!("witness: {witness}")),
        None => r
            .field("comparison", "equal")
            .field("witness", Value::Null)
            .field("witness_weight", Value::Null)
            .field("verdict", "inconclusive")
            .line("equal in every scanned weight; this does not decide the question in all orders"),
    })
}

pub fn vk_basis(src: &str, k: i64, d: u32, w: i64, nvars: Option<usize>) -> Out {
    let f = parse_f(src, nvars)?;
    let space = vk_graded_basis(&f, k, d, w)?;
    Ok(space_report("vk-basis", &f, &space))
}

fn torsion_json(sp: &SymPresentation, t: &TorsionReport) -> Value {
    let names = sp.ring_names();
    let witnesses: Vec<Value> = t
        .witnesses
        .iter()
        .map(|(v, e)| {
            json!({
                "variable": names[*v],
                "element": sp.element_polynomial(e, &t.basis).fmt_with(&names),
            })
        })
        .collect();
    json!({ "k": t.k, "torsion_free": t.is_torsion_free(), "witnesses": witnesses })
}

pub fn symalg(src: &str, power: u32, nvars: Option<usize>) -> Out {
    let f = parse_f(src, nvars)?;
    let mut dm = log_derivations(&f)?;
    if dm.weights().is_some() {
        dm = dm.minimalized()?;
    }
    let sp = sym_presentation(&dm);
    let names = sp.ring_names();
    let rk = rees_kernel(&dm)?;
    let linear = pi_injectivity_test(&sp, &rk)?;
    let t = torsion_test_symk(&sp, power)?;
    let relations: Vec<String> = sp
        .relation_polynomials()
        .iter()
        .map(|p| p.fmt_with(&names))
        .collect();
    let kernel: Vec<String> = rk
        .ideal
        .polynomials()
        .iter()
        .map(|p| p.fmt_with(&names))
        .collect();
    let mut r = Report::new("symalg")
        .field("f", f.to_string())
        .field("generators", fields(dm.generators()))
        .field("relations", relations.clone())
        .field("rees_kernel", kernel.clone())
        .field("linear_type", linear)
        .field("torsion", torsion_json(&sp, &t))
        .line(format!(
            "{} generators T1..T{}, {} linear relations",
            dm.len(),
            dm.len(),
            relations.len()
        ));
    for rel in &relations {
        r.push_line(format!("  {rel}"));
    }
    r.push_line(format!(
        "Rees kernel: {} generators; Sym -> Rees injective: {linear}",
        kernel.len()
    ));
    r.push_line(format!(
        "Sym^{power}: {} coordinate zero divisors",
        t.witnesses.len()
    ));
    for (v, e) in &t.witnesses {
        r.push_line(format!(
            "  {} kills {}",
            names[*v],
            sp.element_polynomial(e, &t.basis).fmt_with(&names)
        ));
    }
    Ok(r)
}

fn route_json(r: &RouteReport) -> Value {
    let shape = match &r.shape {
        Shape::Free => json!({ "kind": "free" }),
        Shape::RankOne(v) => json!({ "kind": "rank-one", "relation": v.to_string() }),
        Shape::NotApplicable(why) => json!({ "kind": "na", "reason": why }),
    };
    let mut torsion = Vec::new();
    for t in &r.torsion {
        torsion.push(json!({
            "k": t.k,
            "witness_variables": t.witnesses.iter().map(|(v, _)| *v).collect::<Vec<_>>(),
        }));
    }
    json!({
        "name": r.name,
        "complement": fields(&r.generators),
        "split": r.split,
        "shape": shape,
        "grade": codim_json(r.grade),
        "required": r.required,
        "torsion": torsion,
        "depths": r.depths.iter().map(|(k, d)| json!({ "k": k, "depth": d })).collect::<Vec<_>>(),
        "certified": r.certified,
        "rule": r.rule,
    })
}

pub fn criterion(src: &str, opts: &CriterionOptions, nvars: Option<usize>) -> Out {
    let f = parse_f(src, nvars)?;
    let rep = run_criterion(&f, opts)?;
    let main = rep.routes.iter().find(|r| r.certified).or(rep.routes.first());
    let shape_ok = main.map(|r| !matches!(r.shape, Shape::NotApplicable(_)));
    let witnesses: Vec<Value> = main
        .map(|r| {
            r.torsion
                .iter()
                .flat_map(|t| {
                    t.witnesses
                        .iter()
                        .map(move |(v, w)| json!({ "k": t.k, "variable": v, "element": w.to_string() }))
                })
                .collect()
        })
        .unwrap_or_default();
    let mut r = Report::new("criterion")
        .field("f", f.to_string())
        .field("dimZ", opts.dim_z)
        .field("homogeneous", rep.weights.is_some())
        .field("weights", rep.weights.clone())
        .field("euler", rep.euler.as_ref().map(|c| c.to_string()))
        .field("split", main.map(|r| r.split))
        .field(
            "resolution_shape",
            shape_ok.map(|ok| if ok { "ok" } else { "na" }),
        )
        .field("grade", codim_json(main.and_then(|r| r.grade)))
        .field("required", opts.dim_z + 3)
        .field("certified", rep.verdict == logdiv::symalg::Verdict::Certified)
        .field("torsion_witnesses", witnesses)
        .field("routes", rep.routes.iter().map(route_json).collect::<Vec<_>>())
        .field(
            "rule",
            main.map(|r| r.rule.clone())
                .unwrap_or_else(|| "no Euler field".into()),
        )
        .field("verdict", rep.verdict.as_str())
        .line(format!("f = {f}, dim Z = {}", opts.dim_z));
    match &rep.euler {
        Some(c) => r.push_line(format!("Euler field: {c}")),
        None => r.push_line("no Euler field"),
    }
    for route in &rep.routes {
        r.push_line(format!(
            "route {}: split {}, grade {}, need {}, certified {} ({})",
            route.name,
            route.split,
            codim_json(route.grade),
            route.required,
            route.certified,
            route.rule
        ));
    }
    r.push_line(format!("verdict: {}", rep.verdict.as_str()));
    Ok(r)
}

pub fn arrangement_dn(n: usize, cap: usize, check: Option<Check>) -> Out {
    let d = generic_dn_capped(n, cap)?;
    let eta: Vec<Value> = d
        .eta
        .iter()
        .map(|((i, j), v)| json!({ "i": i + 1, "j": j + 1, "field": field(v) }))
        .collect();
    let sigma: Vec<Value> = d
        .sigma
        .iter()
        .map(|((i, j, k), v)| json!({ "i": i + 1, "j": j + 1, "k": k + 1, "coefficients": v.to_string() }))
        .collect();
    let mut r = Report::new("arrangement")
        .field("n", n)
        .field("f", d.arrangement.f().to_string())
        .field("chi", field(&d.chi))
        .field("eta", eta)
        .field("sigma", sigma)
        .line(format!("f = {}", d.arrangement.f()))
        .line(format!(
            "{} fields eta_ij, {} relations sigma_ijk",
            d.eta.len(),
            d.sigma.len()
        ));
    if let Some(c) = check {
        let (name, ok) = match c {
            Check::Lemma19 => (
                "lemma19",
                standard_basis_check(&d.eta_vectors(), &d.sigma_vectors())?,
            ),
            Check::Prop17 => (
                "prop17",
                direct_sum_check(&d.chi, &d.eta_vectors(), &lemma_order())?,
            ),
        };
        r = r
            .field("check", name)
            .field("holds", ok)
            .line(format!("{name}: {ok}"));
    }
    Ok(r)
}

pub fn arrangement_example9() -> Out {
    let (a, q) = example9_objects();
    Ok(Report::new("arrangement")
        .field("f", a.f().to_string())
        .field(
            "hyperplanes",
            a.hyperplanes().iter().map(|h| h.to_string()).collect::<Vec<_>>(),
        )
        .field("operator", q.to_string())
        .field("order", q.order())
        .field("weight", q.weight(None))
        .line(format!("f = {}", a.f()))
        .line(format!("Q = {q}")))
}
