//! One function per subcommand. Each takes parsed inputs and returns a report.

use std::collections::BTreeMap;
use std::path::Path;
use std::thread;

use cocycle_core::abelian::{check_hexagons, hexagon_failures, mueger_center, quadratic_form, quinn_pair};
use cocycle_core::breen::{is_trivializable, psi, trivialize, Cover};
use cocycle_core::cochain::{cohomology_group_with, is_cocycle, Budget, Cochain};
use cocycle_core::cqha::{
    build_bosonization, build_group_cqha, verify_antipode, verify_coquasi_axioms, verify_coquasitriangular,
    verify_pentagon_rows, BosonizationOptions, CoquasiData, Report as AxiomReport, VerifyOptions,
};
use cocycle_core::nichols::{default_primes, hilbert_prefix};
use cocycle_core::pointed::{central_extension, extension_cocycle, group_profile, invertible_count, lambda_omega};
use cocycle_core::{FinAbGroup, GroupElement};
use serde_json::Value;

use crate::error::CliError;
use crate::format::{
    body_of, check_envelope, element_json, parse_document, AbelianPairJson, BraidingJson, CochainJson, CoquasiJson,
    ExtensionJson, GroupJson, HomJson, QlsJson, QuadraticFormJson, TrilinearJson,
};
use crate::report::Report;

/// Failures listed individually in a report; the rest are only counted.
const LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    /// Largest group order for cohomology; coboundary solving gets twice this.
    pub budget_order: usize,
    pub pentagon: bool,
    pub max_doublings: u32,
    pub primes: Option<Vec<u64>>,
    pub cutoff: usize,
    pub seed: Option<u64>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { budget_order: 16, pentagon: false, max_doublings: 3, primes: None, cutoff: 8, seed: None }
    }
}

impl Settings {
    pub fn budget(&self) -> Budget {
        Budget { max_cohomology_order: self.budget_order, max_solve_order: 2 * self.budget_order }
    }

    fn report(&self, command: &str) -> Report {
        let mut r = Report::new(command);
        if let Some(s) = self.seed {
            r.show("seed", s);
        }
        r
    }
}

pub fn read_input(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn coords(v: &[GroupElement]) -> Vec<Vec<u64>> {
    v.iter().map(element_json).collect()
}

pub fn parse_group(spec: &str) -> Result<FinAbGroup, CliError> {
    let factors = spec
        .split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| CliError::Parse(format!("bad invariant factor {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FinAbGroup::new(&factors)?)
}

fn parse_cocycle(text: &str) -> Result<Cochain, CliError> {
    let w = parse_document::<CochainJson>(text, "cochain")?.to_cochain()?;
    if w.degree() != 3 {
        return Err(CliError::Parse(format!("expected a 3-cocycle, got degree {}", w.degree())));
    }
    if !is_cocycle(&w) {
        return Err(CliError::Parse("the cochain is not a cocycle".into()));
    }
    Ok(w)
}

pub fn cohomology(g: &FinAbGroup, degree: usize, modulus: Option<u64>, s: &Settings) -> Result<Report, CliError> {
    let n = modulus.unwrap_or_else(|| g.exponent());
    let h = cohomology_group_with(g, degree, n, &s.budget())?;
    let mut r = s.report("cohomology");
    r.show("group", g.invariant_factors())
        .show("degree", degree)
        .show("modulus", n)
        .show("invariant_factors", &h.invariant_factors)
        .show("order", h.order())
        .detail("representatives", h.representatives.iter().map(CochainJson::from_cochain).collect::<Vec<_>>());
    Ok(r)
}

pub fn psi_report(text: &str, s: &Settings) -> Result<Report, CliError> {
    let w = parse_cocycle(text)?;
    let form = psi(&w)?;
    let m = w.group().rank();
    let mut nonzero = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let c = form.coeff(i, j, k);
                if c != 0 {
                    nonzero.push([i as u64, j as u64, k as u64, c]);
                }
            }
        }
    }
    let mut r = s.report("psi");
    r.show("psi_zero", form.is_zero())
        .show("psi_on_generators", nonzero)
        .show("trivializable", is_trivializable(&w)?)
        .detail("psi", TrilinearJson::from_form(&form));
    Ok(r)
}

pub fn trivialize_report(text: &str, s: &Settings) -> Result<Report, CliError> {
    let w = parse_cocycle(text)?;
    let mut r = s.report("trivialize");
    let trivializable = is_trivializable(&w)?;
    r.show("trivializable", trivializable);
    match trivialize(&w, s.max_doublings, &s.budget())? {
        Some(t) => {
            let cover = match t.cover {
                Cover::Doubling(k) => format!("doubling x{k}"),
                Cover::Scaling(k) => format!("scaling by {k}"),
            };
            r.show("found", true)
                .show("cover", cover)
                .show("gamma", t.gamma.invariant_factors())
                .show("lift", t.lift)
                .show("alpha_modulus", t.alpha.modulus())
                .detail("p", HomJson::from_hom(&t.p))
                .detail("alpha", CochainJson::from_cochain(&t.alpha));
        }
        None => {
            let reason = if trivializable {
                "no trivialization found within budget"
            } else {
                "psi is nonzero, so no cover trivializes the class"
            };
            r.show("found", false).show("reason", reason);
        }
    }
    Ok(r)
}

pub fn quinn(text: &str, s: &Settings) -> Result<Report, CliError> {
    let q = parse_document::<QuadraticFormJson>(text, "quadratic_form")?.to_form()?;
    let pair = quinn_pair(&q)?;
    let mut r = s.report("quinn");
    r.show("values", q.values())
        .show("modulus", q.modulus())
        .show("hexagons", check_hexagons(&pair))
        .detail("cocycle", CochainJson::from_cochain(&pair.omega))
        .detail("pair", AbelianPairJson::from_pair(&pair));
    Ok(r)
}

pub fn abelian_check(text: &str, s: &Settings) -> Result<Report, CliError> {
    let pair = parse_document::<AbelianPairJson>(text, "abelian_pair")?.to_pair()?;
    let failures = hexagon_failures(&pair);
    let mut r = s.report("abelian-check");
    r.show("hexagons", failures.is_empty())
        .show("hexagon_failures", failures.len())
        .show(
            "first_failures",
            failures.iter().take(LISTED_FAILURES).map(|(h, t)| format!("hexagon {h} at {t:?}")).collect::<Vec<_>>(),
        )
        .show("mueger_center", coords(&mueger_center(&pair.c)?));
    if failures.is_empty() {
        r.show("quadratic_form", quadratic_form(&pair)?.values());
        r.show("psi_zero", psi(&pair.omega)?.is_zero());
    }
    Ok(r)
}

pub fn pointed(text: &str, s: &Settings) -> Result<Report, CliError> {
    let w = parse_cocycle(text)?;
    let lambda = lambda_omega(&w)?;
    let mut r = s.report("pointed");
    r.show("pointed", lambda.len() == w.group().order())
        .show("lambda_omega", coords(&lambda))
        .show("invertible_count", invertible_count(&w)?)
        .show("psi_zero", psi(&w)?.is_zero());
    Ok(r)
}

pub fn extension(text: &str, s: &Settings) -> Result<Report, CliError> {
    let d = parse_document::<ExtensionJson>(text, "extension_datum")?.to_datum()?;
    let w = extension_cocycle(&d)?;
    let p = group_profile(&central_extension(&d)?);
    let histogram: BTreeMap<String, usize> = p.order_histogram.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let mut r = s.report("extension");
    r.show("order", p.order)
        .show("abelian", p.is_abelian)
        .show("element_orders", histogram)
        .show("center_size", p.center_size)
        .show("psi_zero", psi(&w)?.is_zero())
        .detail("total_group", GroupJson::from_group(&d.total_group()))
        .detail("omega", CochainJson::from_cochain(&w));
    Ok(r)
}

pub fn nichols(text: &str, s: &Settings) -> Result<Report, CliError> {
    let d = parse_document::<BraidingJson>(text, "braiding")?.to_datum()?;
    let primes = s.primes.clone().unwrap_or_else(|| default_primes(d.modulus(), 3));
    let hp = hilbert_prefix(&d, s.cutoff, &primes)?;
    let mut r = s.report("nichols");
    r.show("rank", d.rank()).show("cutoff", s.cutoff).show("dims", &hp.dims).show("primes", &hp.primes_used);
    r.show("agreement", hp.agreement);
    if let Some(last) = hp.dims.iter().rposition(|&x| x != 0) {
        if last < s.cutoff {
            r.show("total_dimension", hp.dims.iter().sum::<usize>());
        }
    }
    r.detail("per_prime", &hp.per_prime);
    Ok(r)
}

/// The axiom verifier, with the pentagon split across threads by first argument.
pub fn verify_all(h: &CoquasiData, pentagon: bool) -> Result<AxiomReport, CliError> {
    let mut rep = verify_coquasi_axioms(h, &VerifyOptions { pentagon: false })?;
    if pentagon {
        let d = h.dim();
        let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(d).max(1);
        let chunk = d.div_ceil(workers);
        let parts: Vec<_> = thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let rows = (w * chunk).min(d)..((w + 1) * chunk).min(d);
                    scope.spawn(move || verify_pentagon_rows(h, rows))
                })
                .collect();
            handles.into_iter().map(|t| t.join().expect("pentagon worker panicked")).collect()
        });
        for part in parts {
            rep.merge(part?);
        }
    }
    Ok(rep)
}

fn axiom_fields(r: &mut Report, prefix: &str, rep: &AxiomReport) {
    let checked: BTreeMap<&str, usize> = rep.checked.iter().map(|(c, n)| (c.name(), *n)).collect();
    let listed: Vec<String> = rep
        .failures
        .iter()
        .take(LISTED_FAILURES)
        .map(|f| format!("{} at {:?}", f.check.name(), f.args))
        .collect();
    r.show(&format!("{prefix}passed"), rep.passed())
        .show(&format!("{prefix}failures"), rep.failures.len())
        .show(&format!("{prefix}first_failures"), listed)
        .detail(&format!("{prefix}checked"), checked);
}

fn load_coquasi(text: &str) -> Result<CoquasiData, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    match check_envelope(&v, &["coquasi", "cochain", "report"])? {
        "coquasi" => body_of::<CoquasiJson>(v, "coquasi")?.to_data(),
        "cochain" => {
            let w = parse_cocycle(text)?;
            Ok(build_group_cqha(&w)?)
        }
        _ => {
            let quotient = v
                .get("quotient")
                .cloned()
                .ok_or_else(|| CliError::Parse("report has no \"quotient\" tables".into()))?;
            body_of::<CoquasiJson>(quotient, "coquasi")?.to_data()
        }
    }
}

pub fn cqha_verify(text: &str, s: &Settings) -> Result<Report, CliError> {
    let h = load_coquasi(text)?;
    let rep = verify_all(&h, s.pentagon)?;
    let mut r = s.report("cqha-verify");
    r.show("dim", h.dim()).show("root_order", h.ring.order()).show("pentagon", if s.pentagon { "checked" } else { "skipped" });
    axiom_fields(&mut r, "", &rep);
    if h.antipode.is_some() {
        axiom_fields(&mut r, "antipode_", &verify_antipode(&h)?);
    } else {
        r.show("antipode", "absent");
    }
    match &h.r_form {
        Some(rf) => axiom_fields(&mut r, "r_form_", &verify_coquasitriangular(&h, rf)?),
        None => {
            r.show("r_form", "absent");
        }
    }
    Ok(r)
}

pub fn bosonize(text: &str, s: &Settings) -> Result<Report, CliError> {
    let d = parse_document::<QlsJson>(text, "qls_datum")?.to_datum()?;
    let opts = BosonizationOptions { pentagon: false, max_dim: 4 * s.budget_order };
    let b = build_bosonization(&d, &opts)?;
    let a = &b.quotient;
    let rep = verify_all(a, s.pentagon)?;
    let mut r = s.report("bosonize");
    r.show("cover_dim", b.hopf.dim())
        .show("dim", a.dim())
        .show("labels", &a.labels)
        .show("pentagon", if s.pentagon { "checked" } else { "skipped" });
    axiom_fields(&mut r, "", &rep);
    axiom_fields(&mut r, "antipode_", &verify_antipode(a)?);
    r.detail("datum", QlsJson::from_datum(&d)).detail("pi", &b.pi).detail("quotient", CoquasiJson::from_data(a));
    Ok(r)
}
