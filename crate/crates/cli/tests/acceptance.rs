//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use symmetrix_core::dsl::{self, Script};
use symmetrix_core::engine::pipelines::{AddPipeline, MomentPipeline, MultPipeline};
use symmetrix_core::engine::{polarize, solve_for, Expr, FuncSymbol, Monomial};
use symmetrix_core::field::{rat, Rational};
use symmetrix_core::maps::FieldMap;
use symmetrix_core::models::ModelRegistry;
use symmetrix_core::moments::{
    additive_var, bell, bell_via, build_quadratic_moment_family, moment_closure_defect, MultiIndex,
};
use symmetrix_core::sampling::RatFuncSource;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

const DECLS: &str = "biadditive B; additive a; hom phi1; hom phi2;";

fn expr(text: &str) -> Expr {
    let s =
        dsl::parse(&format!("{DECLS} eq g: {text} = 0;")).unwrap_or_else(|e| panic!("{text}: {e}"));
    s.equations[0].difference()
}

fn script(body: &str) -> Script {
    dsl::parse(&format!("{DECLS} {body}")).unwrap_or_else(|e| panic!("{e}"))
}

fn monomial(text: &str) -> Monomial {
    expr(text).terms().next().expect("nonzero").0.clone()
}

fn same(what: &str, got: &Expr, want: &Expr) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn ensure(cond: bool, what: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn specializations(s: &Script) -> Result<Vec<Expr>, String> {
    s.specializations
        .iter()
        .map(|sp| s.run_specialization(sp).map_err(err))
        .collect()
}

fn factorial(n: usize) -> Rational {
    rat((1..=n as i64).product())
}

fn polarization() -> Outcome {
    for n in 1..=4 {
        let a = FuncSymbol::multiadditive("A", n);
        let ys: Vec<Expr> = (1..=n).map(|i| Expr::var(&format!("y{i}"))).collect();
        let want = a.apply(ys).map_err(err)?.scale(&factorial(n));
        same(
            &format!("n={n}, m=n"),
            &polarize(&a, n).map_err(err)?,
            &want,
        )?;
        let extra = polarize(&a, n + 1).map_err(err)?;
        ensure(extra.is_zero(), format!("n={n}, m=n+1 leaves {extra}"))?;
    }
    Ok(())
}

fn golden_mult() -> Outcome {
    let s = script(
        "eq mult: B(x*y, x*y) = B(x,x)*B(y,y);
         degree mult 4;
         fact unit: B(1,1) = 1;
         fact fold: B(x,1) = a(x);
         specialize mult at (1, 1, 1, 1);
         specialize mult at (x, 1, 1, 1);
         specialize mult at (x, x, 1, 1);
         specialize mult at (x, x, 1, 1) with unit, fold;",
    );
    let three = rat(3);
    let b4 = s.symmetrized("mult").map_err(err)?.scale(&three);
    let expected = expr(
        "B(x1*x4, x2*x3) + B(x1*x3, x2*x4) + B(x1*x2, x3*x4)
         - B(x1,x2)*B(x3,x4) - B(x1,x3)*B(x2,x4) - B(x1,x4)*B(x2,x3)",
    );
    same("B4", &b4, &expected)?;
    let sp = specializations(&s)?;
    same(
        "(1,1,1,1)",
        &sp[0].scale(&three),
        &expr("-3*(B(1,1) - 1)*B(1,1)"),
    )?;
    same(
        "(x,1,1,1)",
        &sp[1].scale(&three),
        &expr("-3*(B(1,1) - 1)*B(x,1)"),
    )?;
    same(
        "(x,x,1,1)",
        &sp[2].scale(&three),
        &expr("B(x^2, 1) + (2 - B(1,1))*B(x,x) - 2*B(x,1)^2"),
    )?;
    let solved = solve_for(&sp[3], &monomial("B(x,x)")).map_err(err)?;
    same("B(x,x)", &solved, &expr("2*a(x)^2 - a(x^2)"))?;
    same(
        "pipeline B4",
        &MultPipeline::run().map_err(err)?.b4,
        &expected,
    )
}

fn golden_add() -> Outcome {
    let s = script(
        "eq add: B(x*y, x*y) = y^2*B(x,x) + x^2*B(y,y);
         degree add 4;
         fact zero: B(1,1) = 0;
         fact fold: B(x,1) = a(x);
         specialize add at (1, 1, 1, 1);
         specialize add at (x, y, 1, 1) with zero, fold;",
    );
    let expected = expr(
        "1/3*(B(x1*x4, x2*x3) + B(x1*x3, x2*x4) + B(x1*x2, x3*x4))
         - 1/3*(x1*B(x3,x2)*x4 + x2*B(x3,x1)*x4 + B(x1,x2)*x3*x4
                + x1*x2*B(x3,x4) + x1*B(x2,x4)*x3 + B(x1,x4)*x2*x3)",
    );
    same("B4", &s.symmetrized("add").map_err(err)?, &expected)?;
    let sp = specializations(&s)?;
    same("(1,1,1,1)", &sp[0], &expr("-B(1,1)"))?;
    let form = solve_for(&sp[1], &monomial("B(x,y)")).map_err(err)?;
    same("B(x,y)", &form, &expr("2*x*a(y) + 2*y*a(x) - a(x*y)"))?;
    let back = script(&format!(
        "fact: B(x,y) = {form}; eq t: B(x^2,x^2) - 2*x^2*B(x,x) = 0;"
    ));
    let rewritten = back
        .fact_set(&[])
        .map_err(err)?
        .rewrite(&back.equations[0].difference())
        .map_err(err)?;
    let quartic = expr("a(x^4) - 6*x^2*a(x^2) + 8*x^3*a(x)");
    same("substituted trace", &-&rewritten, &quartic)?;
    same(
        "pipeline quartic",
        &AddPipeline::run().map_err(err)?.quartic,
        &quartic,
    )
}

fn golden_mult_quartic() -> Outcome {
    let quartic = "-a(x^4) + a(x^2)^2 + 4*a(x)^2*a(x^2) - 4*a(x)^4";
    let s = script(&format!(
        "eq quartic: {quartic} = 0; degree quartic 4;
         fact one: a(1) = 1;
         specialize quartic at (x, y, z, 1) with one;"
    ));
    let a4 = expr(
        "-a(x1*x2*x3*x4)
         + 1/3*(a(x1*x2)*a(x3*x4) + a(x1*x3)*a(x2*x4) + a(x2*x3)*a(x1*x4))
         + 2/3*(a(x1)*a(x2)*a(x3*x4) + a(x1)*a(x3)*a(x2*x4) + a(x2)*a(x3)*a(x1*x4)
                + a(x1)*a(x2*x3)*a(x4) + a(x2)*a(x1*x3)*a(x4) + a(x1*x2)*a(x3)*a(x4))
         - 4*a(x1)*a(x2)*a(x3)*a(x4)",
    );
    same("A4", &s.symmetrized("quartic").map_err(err)?, &a4)?;
    let three = expr("-a(x*y*z) + a(x)*a(y*z) + a(y)*a(x*z) + (a(x*y) - 2*a(x)*a(y))*a(z)");
    same("three-variable", &specializations(&s)?[0], &three)?;
    let p = MultPipeline::run().map_err(err)?;
    same("pipeline quartic", &p.quartic, &expr(quartic))?;
    same("pipeline A4", &p.a4, &a4)?;
    same("pipeline three-variable", &p.three_variable, &three)
}

fn golden_moment() -> Outcome {
    let p = MomentPipeline::run().map_err(err)?;
    same("q", &p.q, &expr("2*(phi1(x) + phi2(x))*a(x) - a(x^2)"))?;
    let quartic = "a(x^4) + (-2*phi2(x)^2 - 2*phi1(x)*phi2(x) - 2*phi1(x)^2)*a(x^2)
                   + (4*phi1(x)*phi2(x)^2 + 4*phi1(x)^2*phi2(x))*a(x)";
    same("quartic", &p.quartic, &expr(quartic))?;
    let spade = expr(
        "2*a(x*y*z)
         - (phi1(x) + phi2(x))*a(y*z) - (phi1(y) + phi2(y))*a(x*z) - (phi1(z) + phi2(z))*a(x*y)
         + (phi1(x)*phi2(y) + phi2(x)*phi1(y))*a(z)
         + (phi1(x)*phi2(z) + phi2(x)*phi1(z))*a(y)
         + (phi1(y)*phi2(z) + phi2(y)*phi1(z))*a(x)",
    );
    same("spadesuit", &p.spadesuit, &spade)?;
    let s = script(&format!(
        "eq quartic: {quartic} = 0; degree quartic 4;
         fact: phi1(1) = 1; fact: phi2(1) = 1; fact vanish: a(1) = 0;
         specialize quartic at (1, 1, 1, 1);
         specialize quartic at (x, y, z, 1) with vanish;"
    ));
    let sp = specializations(&s)?;
    same("a(1) condition", &sp[0], &expr("3*a(1)"))?;
    same("scripted spadesuit", &sp[1].scale(&rat(2)), &spade)
}

fn model_suite() -> Outcome {
    let reg = ModelRegistry::builtin();
    let positive = [
        ("deriv-square", "pi2"),
        ("second-order-d", "pi2"),
        ("second-order-dd", "pi2"),
        ("second-order-combo", "pi2"),
        ("square", "mult"),
        ("subst-product", "mult"),
        ("norm-sqrt2", "mult"),
        ("twisted-subst", "twisted"),
        ("subst-hom", "mult"),
        ("conj-sqrt2", "mult"),
        ("moment-d", "spadesuit"),
        ("moment-dd", "spadesuit"),
    ];
    for (model, target) in positive {
        for r in reg
            .verify(model, target.parse().map_err(err)?, 20, 0)
            .map_err(err)?
        {
            ensure(r.passed(), format!("{model} {target}: {r}"))?;
        }
    }
    let closing: Vec<String> = ["subst-product", "norm-sqrt2"]
        .iter()
        .flat_map(|m| reg.verify(m, "mult".parse().unwrap(), 20, 0).unwrap())
        .map(|r| r.check)
        .collect();
    ensure(
        closing.iter().filter(|c| *c == "mult-closing").count() == 2,
        "mult-closing not run for product models",
    )?;
    for (model, target) in [("deriv-square", "mult"), ("square", "pi2")] {
        let reports = reg
            .verify(model, target.parse().map_err(err)?, 20, 0)
            .map_err(err)?;
        let failed = reports.iter().find(|r| !r.passed());
        ensure(
            failed.is_some_and(|r| r.witness.is_some()),
            format!("negative control {model} {target} did not fail with a witness"),
        )?;
    }
    Ok(())
}

/// `α!·[z^α] exp(Σ_β a_β z^β/β!)`, by truncated power series.
fn bell_by_series(alpha: &MultiIndex) -> Expr {
    type Series = BTreeMap<MultiIndex, Expr>;
    let indices = alpha.below();
    let fact = |m: &MultiIndex| -> Rational {
        m.components()
            .iter()
            .map(|&c| factorial(c as usize))
            .product()
    };
    let mul = |p: &Series, q: &Series| -> Series {
        let mut out = Series::new();
        for (i, a) in p {
            for (j, b) in q {
                let k = i.add(j);
                if k.le(alpha) {
                    let e = out.entry(k).or_insert_with(Expr::zero);
                    *e = &*e + &(a * b);
                }
            }
        }
        out
    };
    let s: Series = indices
        .iter()
        .filter(|b| !b.is_zero())
        .map(|b| {
            (
                b.clone(),
                Expr::var(&additive_var(b)).scale(&fact(b).recip()),
            )
        })
        .collect();
    let mut total: Series = [(MultiIndex::zero(alpha.rank()), Expr::one())].into();
    let mut power = total.clone();
    for k in 1..=alpha.weight() as usize {
        power = mul(&power, &s);
        for (i, e) in &power {
            let t = total.entry(i.clone()).or_insert_with(Expr::zero);
            *t = &*t + &e.scale(&factorial(k).recip());
        }
    }
    total
        .get(alpha)
        .cloned()
        .unwrap_or_else(Expr::zero)
        .scale(&fact(alpha))
}

fn moment_suite() -> Outcome {
    for (rank, bound) in [(1, 4), (2, 3)] {
        for alpha in MultiIndex::up_to(rank, bound) {
            let b = bell(&alpha);
            same(
                &format!("B_{alpha} series"),
                &b.expansion,
                &bell_by_series(&alpha),
            )?;
            if alpha.is_zero() {
                continue;
            }
            let last = |a: &MultiIndex| a.components().iter().rposition(|c| *c > 0).unwrap();
            same(
                &format!("B_{alpha} coordinates"),
                &bell_via(&alpha, last).expansion,
                &b.expansion,
            )?;
        }
    }
    for rank in [1, 2] {
        for alpha in MultiIndex::up_to(rank, 3) {
            let defect = moment_closure_defect(&alpha).map_err(err)?;
            ensure(defect.is_zero(), format!("closure at {alpha}: {defect}"))?;
        }
    }
    for d in [FieldMap::FormalDerivative, FieldMap::derivative_power(2)] {
        let mut src = RatFuncSource::seeded(0);
        let (_, reports) =
            build_quadratic_moment_family(1, |_| d.clone(), 2, 20, &mut src).map_err(err)?;
        for r in reports {
            ensure(r.passed(), format!("d = {d}: {r}"))?;
        }
    }
    Ok(())
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        prop::sample::select(vec!["x", "y"]).prop_map(Expr::var),
        (-3i64..=3).prop_map(Expr::int),
    ]
}

fn generated_expr() -> impl Strategy<Value = Expr> {
    let a = FuncSymbol::additive("a");
    let b = FuncSymbol::biadditive("B");
    leaf().prop_recursive(3, 16, 2, move |inner| {
        let (a, b) = (a.clone(), b.clone());
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| &l + &r),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| &l * &r),
            (inner.clone(), -3i64..=3, 1i64..=4)
                .prop_map(|(e, n, d)| e.scale(&symmetrix_core::field::ratio(n, d))),
            inner.clone().prop_map(move |e| a.apply(vec![e]).unwrap()),
            (inner.clone(), inner).prop_map(move |(l, r)| b.apply(vec![l, r]).unwrap()),
        ]
    })
}

fn cli(args: &[&str]) -> Vec<u8> {
    Command::new(env!("CARGO_BIN_EXE_symmetrix"))
        .args(args)
        .output()
        .expect("binary runs")
        .stdout
}

fn infrastructure() -> Outcome {
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: 64,
            failure_persistence: None,
            ..Config::default()
        },
        proptest::test_runner::TestRng::deterministic_rng(
            proptest::test_runner::RngAlgorithm::ChaCha,
        ),
    );
    runner
        .run(
            &(generated_expr(), generated_expr(), 1u32..5),
            |(l, r, degree)| {
                let src =
                    format!("{DECLS} eq e: {l} = {r}; degree e {degree}; fact f: B(x,1) = a(x);");
                let s = dsl::parse(&src).unwrap();
                let text = dsl::print(&s);
                prop_assert_eq!(&dsl::parse(&text).unwrap(), &s);
                prop_assert_eq!(&l.expand().unwrap(), &l);
                let copy = l.clone();
                prop_assert!((&l - &copy).is_zero());
                Ok(())
            },
        )
        .map_err(err)?;
    let runs: [&[&str]; 3] = [
        &[
            "verify",
            "parallelogram",
            "--model",
            "norm-sqrt2",
            "--seed",
            "7",
            "--format",
            "json",
        ],
        &[
            "verify",
            "mult",
            "--model",
            "deriv-square",
            "--seed",
            "7",
            "--format",
            "json",
        ],
        &[
            "moments",
            "--rank",
            "2",
            "--bound",
            "2",
            "--seed",
            "7",
            "--samples",
            "5",
        ],
    ];
    for args in runs {
        let first = cli(args);
        ensure(!first.is_empty(), format!("no output for {args:?}"))?;
        ensure(
            first == cli(args),
            format!("output differs between runs of {args:?}"),
        )?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "iterated differences of symmetric forms, n = 1..4",
            polarization,
        ),
        ("multiplicative B4 and its specializations", golden_mult),
        ("additive B4, B-form and quartic", golden_add),
        (
            "multiplicative quartic, A4 and three-variable identity",
            golden_mult_quartic,
        ),
        ("moment q and the three-variable identity", golden_moment),
        ("model suite with negative controls", model_suite),
        ("moment suite", moment_suite),
        (
            "round trip, normal forms and CLI determinism",
            infrastructure,
        ),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(()) => println!("PASS criterion {}: {title}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {title}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
