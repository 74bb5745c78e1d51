use std::time::{Duration, Instant};

use serde_json::json;

use logdiv::arrangements::{example9_objects, generic_dn, lemma_order, standard_basis_check};
use logdiv::groebner::{buchberger, FreeModuleVector};
use logdiv::logder::{ann_theta, direct_sum_check, log_derivations, DerivationModule};
use logdiv::poly::ModuleOrder;
use logdiv::symalg::{
    criterion, evaluate_route, pi_injectivity_test, rees_kernel, sym_presentation, symbol_module,
    torsion_test_symk, CriterionOptions, Verdict,
};
use logdiv::vfilt::{compare_v0, v_membership, Comparison};
use logdiv::{Polynomial, TermOrder, WeylOperator};

use crate::report::Report;
use crate::Fault;

type Outcome = Result<bool, String>;

pub struct CaseResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

pub struct SelftestReport {
    cases: Vec<CaseResult>,
    fault: Option<Fault>,
}

impl SelftestReport {
    pub fn failed(&self) -> bool {
        self.cases.iter().any(|c| !c.passed)
    }

    pub fn into_report(self) -> Report {
        let failed: Vec<&str> = self.cases.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        let mut r = Report::new("selftest")
            .field("fault", self.fault.map(|f| format!("{f:?}")))
            .field(
                "cases",
                self.cases
                    .iter()
                    .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                    .collect::<Vec<_>>(),
            )
            .field("failed", failed.clone())
            .field("passed", failed.is_empty());
        for c in &self.cases {
            r.push_line(format!(
                "{:<4} {:<26} {:>9.3} s  {}",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.elapsed.as_secs_f64(),
                c.detail
            ));
        }
        r.line(if failed.is_empty() {
            "all golden cases pass".to_string()
        } else {
            format!("failing: {}", failed.join(", "))
        })
    }
}

fn p(s: &str, n: usize) -> Result<Polynomial, String> {
    Polynomial::parse_in(s, n).map_err(|e| e.to_string())
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn run(fault: Option<Fault>) -> SelftestReport {
    let cases: Vec<(&'static str, Box<dyn Fn() -> Outcome>)> = vec![
        ("normal-crossings", Box::new(normal_crossings)),
        ("quintic-membership", Box::new(quintic_membership)),
        ("quintic-symbol-gap", Box::new(quintic_gap)),
        ("dn-standard-basis", Box::new(move || dn_standard_basis(fault))),
        ("dn-euler-splitting", Box::new(dn_splitting)),
        ("dn-minimal-generators", Box::new(dn_minimal)),
        ("d3-certification", Box::new(d3_certification)),
        ("isolated-singularities", Box::new(isolated)),
        ("quadric-torsion", Box::new(quadric)),
        ("d4-torsion", Box::new(d4_torsion)),
    ];
    let mut out = Vec::new();
    for (name, case) in cases {
        let t = Instant::now();
        let (passed, detail) = match case() {
            Ok(true) => (true, String::new()),
            Ok(false) => (false, "deviates from the expected value".to_string()),
            Err(msg) => (false, format!("error: {msg}")),
        };
        out.push(CaseResult {
            name,
            passed,
            detail,
            elapsed: t.elapsed(),
        });
    }
    SelftestReport { cases: out, fault }
}

fn normal_crossings() -> Outcome {
    for (m, k) in [(0usize, 2usize), (1, 2), (0, 3)] {
        let n = m + k;
        let f = (m..n).fold(Polynomial::one(n), |acc, i| &acc * &Polynomial::var(n, i));
        let mut expected = Vec::new();
        for i in 0..n {
            let mut v = vec![Polynomial::zero(n); n];
            v[i] = if i < m {
                Polynomial::one(n)
            } else {
                Polynomial::var(n, i)
            };
            expected.push(FreeModuleVector::new(v));
        }
        let dm = e(log_derivations(&f))?;
        let ex = e(DerivationModule::from_generators(&f, expected))?;
        if !e(dm.same_module(&ex))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn quintic_membership() -> Outcome {
    let (a, q) = example9_objects();
    e(v_membership(a.f(), &q, 0))
}

fn quintic_gap() -> Outcome {
    let (a, q) = example9_objects();
    let dm = e(e(log_derivations(a.f()))?.minimalized())?;
    let sm = e(symbol_module(&dm, 2))?;
    let outside = !e(sm.normal_form(&e(q.symbol())?))?.is_zero();
    let linear = e(pi_injectivity_test(&sym_presentation(&dm), &e(rees_kernel(&dm))?))?;
    let gap = matches!(e(compare_v0(a.f(), 2, 3))?, Comparison::Gap { .. });
    Ok(outside && linear && gap)
}

fn dn_standard_basis(fault: Option<Fault>) -> Outcome {
    for n in 3..=5 {
        let d = e(generic_dn(n))?;
        let mut eta = d.eta_vectors();
        if fault == Some(Fault::EtaSign) {
            // x1*x2*(d1 - d2) becomes x1*x2*(d1 + d2)
            let mut c = eta[0].components().to_vec();
            c[1] = -&c[1];
            eta[0] = FreeModuleVector::new(c);
        }
        if !e(standard_basis_check(&eta, &d.sigma_vectors()))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn dn_splitting() -> Outcome {
    for n in 3..=5 {
        let d = e(generic_dn(n))?;
        if !e(direct_sum_check(&d.chi, &d.eta_vectors(), &lemma_order()))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn dn_minimal() -> Outcome {
    for n in 2..=5 {
        let d = e(generic_dn(n))?;
        let dm = e(e(log_derivations(d.arrangement.f()))?.minimalized())?;
        if dm.len() != 1 + n * (n - 1) / 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn d3_certification() -> Outcome {
    let d = e(generic_dn(3))?;
    let f = d.arrangement.f();
    let chi = WeylOperator::vector_field(d.chi.components());
    let der = e(e(log_derivations(f))?.minimalized())?;
    let route = e(evaluate_route(
        "eta",
        f,
        &chi,
        &der,
        d.eta_vectors(),
        &CriterionOptions::default(),
    ))?;
    // the single relation generates the maximal ideal
    let rel = match &route.shape {
        logdiv::symalg::Shape::RankOne(v) => v.clone(),
        _ => return Ok(false),
    };
    let order = ModuleOrder::top(TermOrder::DegRevLex);
    let as_ideal: Vec<FreeModuleVector> = rel
        .components()
        .iter()
        .map(|c| FreeModuleVector::from_polynomial(c.clone()))
        .collect();
    let m: Vec<FreeModuleVector> = (0..3)
        .map(|i| FreeModuleVector::from_polynomial(Polynomial::var(3, i)))
        .collect();
    let same = e(e(buchberger(&as_ideal, &order))?.same_module(&e(buchberger(&m, &order))?))?;
    Ok(route.split && route.certified && same)
}

fn isolated() -> Outcome {
    for s in ["x^3+y^3+z^3", "x^2+y^2+z^2", "x^5+y^3+z^2"] {
        if e(criterion(&p(s, 3)?, &CriterionOptions::default()))?.verdict != Verdict::Certified {
            return Ok(false);
        }
    }
    Ok(true)
}

fn quadric() -> Outcome {
    let ann = e(e(ann_theta(&p("x^2+y^2+z^2+w^2", 4)?))?.minimalized())?;
    let sp = sym_presentation(&ann);
    let t = e(torsion_test_symk(&sp, 2))?;
    let all = t.witnesses.iter().map(|(v, _)| *v).collect::<Vec<_>>() == vec![0, 1, 2, 3];
    let linear = e(pi_injectivity_test(&sp, &e(rees_kernel(&ann))?))?;
    Ok(all && !linear)
}

fn d4_torsion() -> Outcome {
    let d = e(generic_dn(4))?;
    let a4 = e(DerivationModule::from_generators(
        d.arrangement.f(),
        d.eta_vectors(),
    ))?;
    let t = e(torsion_test_symk(&sym_presentation(&a4), 2))?;
    Ok(!t.witnesses.is_empty())
}
