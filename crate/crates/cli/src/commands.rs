use std::path::Path;
use std::sync::Arc;

use klow::abelian::int_json;
use klow::check::IdentityCheck;
use klow::cone::cone_suite;
use klow::excision::{
    boundary_class, nonunital_k0, six_term_check, swan_check, BoundaryInput, Extension,
};
use klow::homology::{self, excisiveness_verdict, unital_bar_check, RationalAlgebra};
use klow::kone::{default_levels, k1_report, structural_identities_check, whitehead_suite};
use klow::kzero::{default_n_max, k0_report};
use klow::toeplitz::toeplitz_suite;
use klow::{Catalog, Context, Error, FiniteRing, RMatrix, Result};
use serde_json::{json, Value};

use crate::report::Outcome;

pub struct Env {
    pub catalog: Catalog,
    pub ctx: Context,
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::BadInput(format!("cannot read `{path}`: {e}")))
}

fn is_path(arg: &str) -> bool {
    arg.ends_with(".json") || Path::new(arg).is_file()
}

impl Env {
    pub fn ring(&self, name: &str) -> Result<Arc<FiniteRing>> {
        self.catalog.get(name)
    }

    fn extension(&self, arg: &str) -> Result<Extension> {
        if is_path(arg) {
            Extension::from_json(&read_file(arg)?, &self.catalog)
        } else {
            Extension::builtin(arg)
        }
    }

    fn algebra(&self, arg: &str) -> Result<RationalAlgebra> {
        if is_path(arg) {
            RationalAlgebra::from_json(&read_file(arg)?)
        } else {
            RationalAlgebra::builtin(arg)
        }
    }
}

fn ring_input(r: &FiniteRing) -> String {
    format!("ring {} {}", r.name(), r.digest())
}

fn extension_input(e: &Extension) -> String {
    format!(
        "extension {} {:?} {} {:?} {:?}",
        e.b.digest(),
        e.ideal,
        e.c.digest(),
        e.proj,
        e.section
    )
}

fn algebra_input(a: &RationalAlgebra) -> String {
    serde_json::to_string(&a.to_spec()).expect("spec serializes")
}

fn parse_matrix(ring: &Arc<FiniteRing>, text: &str) -> Result<RMatrix> {
    let rows: Vec<Vec<u32>> =
        serde_json::from_str(text).map_err(|e| Error::BadInput(format!("matrix `{text}`: {e}")))?;
    if rows.iter().flatten().any(|&x| x as usize >= ring.order()) {
        return Err(Error::BadInput(format!(
            "matrix `{text}` has entries outside `{}`",
            ring.name()
        )));
    }
    RMatrix::from_rows(ring.clone(), &rows)
}

pub fn ring_list(env: &Env) -> Result<Outcome> {
    let rings: Vec<Value> = env
        .catalog
        .entries()
        .iter()
        .map(|e| json!({"name": e.name, "spec": e.spec}))
        .collect();
    let inputs = vec![serde_json::to_string(env.catalog.entries()).expect("catalog serializes")];
    Ok(Outcome::new(json!({"rings": rings}), inputs))
}

pub fn ring_show(env: &Env, name: &str) -> Result<Outcome> {
    let r = env.ring(name)?;
    let results = json!({
        "name": r.name(),
        "order": r.order(),
        "unital": r.is_unital(),
        "one": r.one(),
        "commutative": r.is_commutative(),
        "characteristic": r.char_exponent(),
        "units": r.units().len(),
        "digest": r.digest(),
        "spec": env.catalog.spec(name),
    });
    Ok(Outcome::new(results, vec![ring_input(&r)]))
}

pub fn k0(env: &Env, name: &str, n_max: Option<usize>) -> Result<Outcome> {
    let r = env.ring(name)?;
    let n = n_max.unwrap_or_else(|| default_n_max(&r, &env.ctx));
    let report = k0_report(&r, n, &env.ctx)?;
    let mut out = Outcome::new(report.to_json(), vec![ring_input(&r)]).truncated();
    out.flags.stabilization_caveat = !report.monoid.stabilized;
    Ok(out)
}

pub fn k1(env: &Env, name: &str, levels: Option<Vec<usize>>) -> Result<Outcome> {
    let r = env.ring(name)?;
    let levels = levels.unwrap_or_else(|| default_levels(&r, &env.ctx));
    let report = k1_report(&r, &levels, &env.ctx)?;
    let mut out = Outcome::new(report.to_json(), vec![ring_input(&r)]).truncated();
    out.flags.stabilization_caveat = !report.stable;
    Ok(out)
}

pub fn boundary(
    env: &Env,
    ext: &str,
    element: &str,
    lift: Option<&str>,
    lift_inv: Option<&str>,
) -> Result<Outcome> {
    let e = env.extension(ext)?;
    let g = parse_matrix(&e.c, element)?;
    let g_hat = lift.map(|t| parse_matrix(&e.b, t)).transpose()?;
    let g_hat_star = lift_inv.map(|t| parse_matrix(&e.b, t)).transpose()?;
    let n = g.n();
    let input = BoundaryInput::new(&e, g, g_hat, g_hat_star)?;
    let k0_a = nonunital_k0(e.a(), e.b.char_exponent(), 2 * n, &env.ctx)?;
    let value = boundary_class(&e, &input, &k0_a)?;
    let results = json!({
        "extension": ext,
        "g": input.g.rows(),
        "g_hat": input.g_hat.rows(),
        "g_hat_star": input.g_hat_star.rows(),
        "h": value.h.rows(),
        "conjugate": value.conjugate.rows(),
        "k0_a": k0_a.group,
        "class": value.class.iter().map(int_json).collect::<Vec<_>>(),
        "class_is_zero": k0_a.group.is_zero_element(&value.class),
        "n_max": 2 * n,
    });
    let inputs = vec![
        extension_input(&e),
        format!("{:?}", input.g_hat.rows()),
        format!("{:?}", input.g_hat_star.rows()),
    ];
    Ok(Outcome::new(results, inputs).truncated())
}

pub fn exactness(env: &Env, ext: &str, level: usize) -> Result<Outcome> {
    let e = env.extension(ext)?;
    let report = six_term_check(&e, level, &env.ctx)?;
    let mut results = report.to_json();
    results["extension"] = json!(ext);
    Ok(Outcome::new(results, vec![extension_input(&e)]).truncated())
}

pub fn swan(env: &Env, field: &str) -> Result<Outcome> {
    let k = env.ring(field)?;
    let report = swan_check(&k, &env.ctx)?;
    let mut out = Outcome::new(report.to_json(), vec![ring_input(&k)]).truncated();
    out.failed = !report.witnesses_hold();
    Ok(out)
}

fn degree(a: &RationalAlgebra, n_max: Option<usize>, env: &Env) -> usize {
    n_max.unwrap_or_else(|| homology::default_n_max(a.dim(), &env.ctx))
}

pub fn hc(env: &Env, arg: &str, n_max: Option<usize>) -> Result<Outcome> {
    let a = env.algebra(arg)?;
    let n = degree(&a, n_max, env);
    let dims = homology::cyclic_homology(&a, n, &env.ctx)?;
    let oracle = a.hc0_oracle();
    let check = IdentityCheck::new(
        "dim HC_0 = dim A/[A,A]",
        (dims[0] != oracle).then(|| format!("{} vs {oracle}", dims[0])),
    );
    let mut out = Outcome::new(
        json!({"algebra": a.name, "n_max": n, "hc": dims, "hc0_oracle": oracle, "checks": [check]}),
        vec![algebra_input(&a)],
    );
    out.failed = !check.pass;
    Ok(out)
}

pub fn hbar(env: &Env, arg: &str, n_max: Option<usize>) -> Result<Outcome> {
    let a = env.algebra(arg)?;
    let n = degree(&a, n_max, env);
    let dims = homology::bar_homology(&a, n, &env.ctx)?;
    Ok(Outcome::new(
        json!({"algebra": a.name, "n_max": n, "hbar": dims}),
        vec![algebra_input(&a)],
    ))
}

pub fn excision_verdict(env: &Env, arg: &str, n_max: Option<usize>) -> Result<Outcome> {
    let a = env.algebra(arg)?;
    let n = n_max.unwrap_or_else(|| degree(&a, None, env).min(3));
    let results = match excisiveness_verdict(&a, n, &env.ctx) {
        Ok(v) => json!({"algebra": a.name, "n_check": n, "verdict": v}),
        Err(Error::UnitalInput(_)) => {
            let check = unital_bar_check(&a, n, &env.ctx)?;
            json!({
                "algebra": a.name,
                "n_check": n,
                "verdict": {"status": "unital"},
                "rerouted": check,
            })
        }
        Err(e) => return Err(e),
    };
    Ok(Outcome::new(results, vec![algebra_input(&a)]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Cone,
    Toeplitz,
    Whitehead,
    Structural,
    All,
}

const WHITEHEAD_SAMPLES: usize = 200;
const SEED: u64 = 0x6b6c6f77;

fn run_suite(
    suite: Suite,
    r: &Arc<FiniteRing>,
    window: Option<usize>,
) -> Result<(Vec<IdentityCheck>, Value)> {
    Ok(match suite {
        Suite::Cone => {
            let n = window.unwrap_or(64);
            (cone_suite(r, n)?, json!(n))
        }
        Suite::Toeplitz => {
            let n = window.unwrap_or(16);
            (toeplitz_suite(r, n)?, json!(n))
        }
        Suite::Whitehead => (whitehead_suite(r, WHITEHEAD_SAMPLES, SEED)?, Value::Null),
        Suite::Structural => {
            let n = window.unwrap_or(2);
            (structural_identities_check(r, n)?, json!(n))
        }
        Suite::All => unreachable!("expanded by the caller"),
    })
}

pub fn verify(env: &Env, suite: Suite, ring: &str, window: Option<usize>) -> Result<Outcome> {
    let r = env.ring(ring)?;
    let suites = match suite {
        Suite::All => vec![
            Suite::Cone,
            Suite::Toeplitz,
            Suite::Whitehead,
            Suite::Structural,
        ],
        s => vec![s],
    };
    let mut sections = Vec::new();
    let mut all_pass = true;
    for s in suites {
        let (checks, w) = run_suite(s, &r, if suite == Suite::All { None } else { window })?;
        let pass = checks.iter().all(|c| c.pass);
        all_pass &= pass;
        let name = format!("{s:?}").to_lowercase();
        sections.push(json!({"suite": name, "window": w, "pass": pass, "checks": checks}));
    }
    let results = json!({"ring": r.name(), "suites": sections, "pass": all_pass});
    let mut out = Outcome::new(results, vec![ring_input(&r)]).truncated();
    out.failed = !all_pass;
    Ok(out)
}
