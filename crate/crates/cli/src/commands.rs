//! Subcommand dispatch: job file plus flags in, JSON value out.

use std::fmt;

use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use foliation_loci::algebra::{
    parse_poly, parse_ratfunc, parse_rational, Ideal, Matrix, MultiPoly, Rational, RationalFunc,
    Vars,
};
use foliation_loci::connection::ConnectionMatrix;
use foliation_loci::foliation::{from_graph_coefficients, AffineChart, Foliation};
use foliation_loci::gauss_manin::{
    derham_basis, gauss_manin_matrix, picard_fuchs, DeRhamForm, HyperellipticFamily,
};
use foliation_loci::multiplicity::{
    macaulay_system, order_bound, FieldDegrees, OrderBoundPolicy, DEFAULT_MINOR_BUDGET,
};
use foliation_loci::periods::{
    beta_blocks, expansion_at_infinity, pairing_flatness_defect, pairing_matrix,
    symplectic_defect, symplectic_normalize, PeriodOracle,
};
use foliation_loci::sigma::{a_locus, sigma_equations, SigmaLocusResult, SigmaOptions, DEFAULT_SUBSET_CAP};

use crate::job::{split_list, JobError, JobFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    CheckFoliation,
    MultOps,
    Sigma,
    ALocus,
    GaussManin,
    PicardFuchs,
    Pairing,
    Normalize,
    Periods,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckFoliation => "check-foliation",
            Command::MultOps => "mult-ops",
            Command::Sigma => "sigma",
            Command::ALocus => "a-locus",
            Command::GaussManin => "gauss-manin",
            Command::PicardFuchs => "picard-fuchs",
            Command::Pairing => "pairing",
            Command::Normalize => "normalize",
            Command::Periods => "periods",
        }
    }

    fn blocks(&self) -> &'static [&'static str] {
        match self {
            Command::CheckFoliation => &["chart", "foliation", "task"],
            Command::MultOps => &["chart", "foliation", "variety", "task"],
            Command::Sigma => &["chart", "foliation", "variety", "task"],
            Command::ALocus => &["chart", "foliation", "variety", "params", "task"],
            _ => &["family", "task"],
        }
    }
}

/// Command-line values; each overrides the matching `task` entry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub k: Option<String>,
    pub mu: Option<String>,
    pub subset_cap: Option<String>,
    pub lambda: Option<String>,
    pub prec: Option<String>,
    pub order: Option<String>,
}

#[derive(Debug)]
pub enum CliError {
    Job(JobError),
    Usage(String),
    Math(foliation_loci::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(e) if !e.is_input_error() => 2,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CliError::Job(_) => "JobParseError",
            CliError::Usage(_) => "UsageError",
            CliError::Math(e) => e.name(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Job(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl From<JobError> for CliError {
    fn from(e: JobError) -> Self {
        CliError::Job(e)
    }
}

impl From<foliation_loci::Error> for CliError {
    fn from(e: foliation_loci::Error) -> Self {
        CliError::Math(e)
    }
}

type Res<T> = std::result::Result<T, CliError>;

struct Ctx<'a> {
    job: &'a JobFile,
    flags: &'a Flags,
}

impl Ctx<'_> {
    fn value(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| self.job.task(key).map(str::to_string))
    }

    fn uint(&self, flag: &Option<String>, key: &str) -> Res<Option<u64>> {
        self.value(flag, key)
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::Usage(format!("`{key}` expects a non-negative integer, got `{s}`")))
            })
            .transpose()
    }

    fn policy(&self) -> Res<Option<OrderBoundPolicy>> {
        match self.value(&self.flags.mu, "mu") {
            None => Ok(None),
            Some(s) if s.trim() == "heuristic" => Ok(Some(OrderBoundPolicy::Heuristic)),
            Some(s) => s
                .trim()
                .parse::<u32>()
                .map(|m| Some(OrderBoundPolicy::Fixed(m)))
                .map_err(|_| CliError::Usage(format!("`mu` expects an integer or `heuristic`, got `{s}`"))),
        }
    }

    fn minor_budget(&self) -> Res<u128> {
        Ok(self
            .uint(&None, "minor-budget")?
            .map_or(DEFAULT_MINOR_BUDGET, u128::from))
    }

    fn chart(&self) -> Res<AffineChart> {
        let b = self.job.require("chart")?;
        let names = b.list("vars");
        if names.is_empty() {
            return Err(JobError {
                line: b.line,
                msg: "chart declares no variables".into(),
            }
            .into());
        }
        let vars = Vars::new(&names);
        if vars.len() != names.len() {
            return Err(CliError::Usage("chart variables must be distinct".into()));
        }
        let ideal = polys(&b.list("ideal"), &vars)?;
        let inv = polys(&b.list("invert"), &vars)?;
        Ok(AffineChart::new(&vars, ideal, inv)?)
    }

    fn foliation(&self) -> Res<Foliation> {
        let chart = self.chart()?;
        let vars = chart.vars().clone();
        let b = self.job.require("foliation")?;
        let fields = b.all("field");
        let leaf = b.list("leaf");
        match (fields.is_empty(), leaf.is_empty()) {
            (false, true) => {
                let comps = fields
                    .iter()
                    .map(|f| ratfuncs(&split_list(f), &vars))
                    .collect::<Res<Vec<_>>>()?;
                Ok(Foliation::new(chart, comps)?)
            }
            (true, false) => {
                let rows = b
                    .all("row")
                    .iter()
                    .map(|r| ratfuncs(&split_list(r), &vars))
                    .collect::<Res<Vec<_>>>()?;
                Ok(from_graph_coefficients(rows, chart, &leaf)?)
            }
            _ => Err(JobError {
                line: b.line,
                msg: "foliation needs either `field` lines or `leaf` with `row` lines".into(),
            }
            .into()),
        }
    }

    fn variety(&self, vars: &Vars) -> Res<Ideal> {
        let b = self.job.require("variety")?;
        Ok(Ideal::new(vars, polys(&b.list("ideal"), vars)?)?)
    }

    fn family(&self) -> Res<HyperellipticFamily> {
        let b = self.job.require("family")?;
        let x = b.get("x").unwrap_or("x").to_string();
        let base = b.list("base");
        let f = b.get("f").ok_or_else(|| JobError {
            line: b.line,
            msg: "family needs `f`".into(),
        })?;
        let mut names = vec![x.clone()];
        names.extend(base.iter().cloned());
        let vars = Vars::new(&names);
        let f = parse_poly(f, &vars)?;
        Ok(HyperellipticFamily::new(&f, &x, &base)?)
    }

    fn k(&self) -> Res<usize> {
        self.uint(&self.flags.k, "k")?
            .map(|k| k as usize)
            .ok_or_else(|| CliError::Usage("`k` is required (flag --k or task key)".into()))
    }

    fn sigma_options(&self) -> Res<SigmaOptions> {
        Ok(SigmaOptions {
            policy: self.policy()?.unwrap_or(OrderBoundPolicy::Heuristic),
            subset_cap: self
                .uint(&self.flags.subset_cap, "subset-cap")?
                .map_or(DEFAULT_SUBSET_CAP, u128::from),
            minor_budget: self.minor_budget()?,
        })
    }
}

fn polys(items: &[String], vars: &Vars) -> Res<Vec<MultiPoly>> {
    Ok(items
        .iter()
        .map(|s| parse_poly(s, vars))
        .collect::<foliation_loci::Result<_>>()?)
}

fn ratfuncs(items: &[String], vars: &Vars) -> Res<Vec<RationalFunc>> {
    Ok(items
        .iter()
        .map(|s| parse_ratfunc(s, vars))
        .collect::<foliation_loci::Result<_>>()?)
}

fn strings<T: ToString>(items: &[T]) -> Value {
    Value::Array(items.iter().map(|p| Value::String(p.to_string())).collect())
}

fn matrix_json(m: &Matrix<RationalFunc>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| strings(r)).collect())
}

fn complex(c: C64) -> Value {
    json!([c.re, c.im])
}

fn complex_matrix(m: &[Vec<C64>]) -> Value {
    Value::Array(
        m.iter()
            .map(|r| Value::Array(r.iter().map(|c| complex(*c)).collect()))
            .collect(),
    )
}

fn connection_json(c: &ConnectionMatrix) -> Value {
    let mut map = serde_json::Map::new();
    for (i, v) in c.base_vars().iter().enumerate() {
        map.insert(v.to_string(), matrix_json(c.matrix(i)));
    }
    Value::Object(map)
}

fn policy_json(p: OrderBoundPolicy) -> Value {
    match p {
        OrderBoundPolicy::Fixed(m) => json!(m),
        OrderBoundPolicy::Heuristic => json!("heuristic"),
    }
}

fn sigma_json(cmd: Command, r: &SigmaLocusResult, policy: OrderBoundPolicy) -> Value {
    let provenance: Vec<Value> = r
        .provenance
        .iter()
        .map(|s| {
            json!({
                "subset": s.subset,
                "mu": s.mu,
                "operators": s.operators,
                "coefficients": s.coefficients,
                "max_degree": s.max_degree,
                "degree_bound": s.degree_bound.to_string(),
            })
        })
        .collect();
    json!({
        "command": cmd.name(),
        "vars": strings(r.generators.vars().names()),
        "generators": strings(r.generators.gens()),
        "empty": r.is_empty_locus(),
        "k": r.k,
        "mu": r.mu,
        "policy": policy_json(policy),
        "rigorous": r.rigorous,
        "subsets_used": r.subsets_used,
        "max_degree": r.max_degree,
        "sum_degree": r.sum_degree,
        "degree_bound": r.degree_bound.to_string(),
        "shortcut": r.shortcut.map(|s| format!("{s:?}")),
        "subfoliation_parameters": r.parameters,
        "provenance": provenance,
    })
}

fn form_json(f: &DeRhamForm) -> Value {
    json!({ "numerator": f.num.to_string(), "pole": f.pole })
}

fn task_form(ctx: &Ctx, fam: &HyperellipticFamily) -> Res<DeRhamForm> {
    let num = parse_poly(ctx.job.task("form").unwrap_or("1"), fam.vars())?;
    let pole = ctx.uint(&None, "pole")?.unwrap_or(1) as u32;
    Ok(DeRhamForm::new(num, pole)?)
}

/// Runs `cmd` on a parsed job.
pub fn run(cmd: Command, job: &JobFile, flags: &Flags) -> Res<Value> {
    job.only(cmd.blocks())?;
    let ctx = Ctx { job, flags };
    match cmd {
        Command::CheckFoliation => {
            let f = ctx.foliation()?;
            let fd = FieldDegrees::of(&f);
            Ok(json!({
                "command": cmd.name(),
                "vars": strings(f.vars().names()),
                "leaf_dim": f.leaf_dim(),
                "ambient_dim": f.ambient_dim(),
                "degree": f.degree(),
                "numerator_degree": fd.numerator,
                "denominator_degree": fd.denominator,
                "inverted": strings(f.chart().inverted()),
                "commuting": true,
                "tangent": true,
                "independent": true,
            }))
        }
        Command::MultOps => {
            let f = ctx.foliation()?;
            let p = ctx.variety(f.vars())?.gens().to_vec();
            let (order, rigorous, policy) = match (ctx.uint(&flags.k, "k")?, ctx.policy()?) {
                (Some(k), _) => (k as u32, true, Value::Null),
                (None, Some(pol)) => {
                    let deg_p = p.iter().filter_map(|q| q.total_degree()).max().unwrap_or(0);
                    let mu = order_bound(pol, f.leaf_dim() as u32, f.degree(), deg_p);
                    (mu, pol.is_rigorous(), policy_json(pol))
                }
                (None, None) => {
                    return Err(CliError::Usage("mult-ops needs --k or --mu".into()));
                }
            };
            let sys = macaulay_system(&p, &f, order)?;
            let point = match ctx.job.task("point") {
                Some(s) => Some(
                    split_list(s)
                        .iter()
                        .map(|c| parse_rational(c))
                        .collect::<foliation_loci::Result<Vec<_>>>()?,
                ),
                None => None,
            };
            let budget = ctx.minor_budget()?;
            let mut out = json!({
                "command": cmd.name(),
                "vars": strings(f.vars().names()),
                "order": order,
                "policy": policy,
                "rigorous": rigorous,
                "minor_size": sys.minor_size(),
                "row_factors": strings(sys.row_factors()),
                "determinants": sys.emission_cost().to_string(),
            });
            if let Some(pt) = &point {
                out["point"] = strings(pt);
                out["vanishes_at_point"] = json!(sys.vanishes_at(pt)?);
            }
            match sys.emit(budget) {
                Ok(ops) => {
                    out["inputs"] = strings(&ops.inputs);
                    out["count"] = json!(ops.emitted.len());
                    out["max_degree"] = json!(ops.max_degree);
                    out["degree_bound"] = json!(ops.degree_bound.to_string());
                    out["emitted"] = json!(true);
                    out["operators"] = strings(&ops.emitted);
                }
                // the rank test at the point still answers the question
                Err(foliation_loci::Error::MinorBudgetExceeded { .. }) if point.is_some() => {
                    out["inputs"] = strings(&p);
                    out["emitted"] = json!(false);
                    out["operators"] = Value::Null;
                }
                Err(e) => return Err(e.into()),
            }
            Ok(out)
        }
        Command::Sigma | Command::ALocus => {
            let f = ctx.foliation()?;
            let v = ctx.variety(f.vars())?;
            let k = ctx.k()?;
            let opts = ctx.sigma_options()?;
            let r = if cmd == Command::ALocus {
                let params = job.require("params")?.list("vars");
                a_locus(&v, &f, k, &params, &opts)?
            } else {
                sigma_equations(&v, &f, k, &opts)?
            };
            Ok(sigma_json(cmd, &r, opts.policy))
        }
        Command::GaussManin => {
            let fam = ctx.family()?;
            let conn = gauss_manin_matrix(&fam)?;
            let basis: Vec<Value> = derham_basis(&fam).iter().map(form_json).collect();
            Ok(json!({
                "command": cmd.name(),
                "f": fam.f().to_string(),
                "genus": fam.genus(),
                "base": strings(fam.base_vars().names()),
                "discriminant": fam.discriminant().to_string(),
                "basis": basis,
                "connection": connection_json(&conn),
            }))
        }
        Command::PicardFuchs => {
            let fam = ctx.family()?;
            let form = task_form(&ctx, &fam)?;
            let op = picard_fuchs(&fam, &form)?;
            Ok(json!({
                "command": cmd.name(),
                "f": fam.f().to_string(),
                "form": form_json(&form),
                "var": op.var(),
                "order": op.order(),
                "operator": op.to_string(),
                "coefficients": strings(op.coeffs()),
                "cleared": strings(&op.cleared()),
            }))
        }
        Command::Pairing => {
            let fam = ctx.family()?;
            let lam = pairing_matrix(&fam)?;
            let conn = gauss_manin_matrix(&fam)?;
            let flat = pairing_flatness_defect(&lam, &conn).iter().all(|d| d.is_zero());
            let mut out = json!({
                "command": cmd.name(),
                "f": fam.f().to_string(),
                "genus": fam.genus(),
                "basis": derham_basis(&fam).iter().map(form_json).collect::<Vec<_>>(),
                "matrix": matrix_json(lam.matrix()),
                "antisymmetric": lam.is_antisymmetric(),
                "isotropic": lam.is_isotropic(),
                "flat": flat,
            });
            if let Some(order) = ctx.value(&flags.order, "order") {
                let order: i64 = order
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("`order` expects an integer, got `{order}`")))?;
                let exps = derham_basis(&fam)
                    .iter()
                    .map(|w| {
                        let s = expansion_at_infinity(w, &fam, order)?;
                        Ok(json!({
                            "form": form_json(w),
                            "parameter": s.symbol(),
                            "low": s.low(),
                            "truncation": s.trunc(),
                            "coefficients": strings(s.coeffs()),
                        }))
                    })
                    .collect::<Res<Vec<_>>>()?;
                out["expansions"] = Value::Array(exps);
            }
            Ok(out)
        }
        Command::Normalize => {
            let fam = ctx.family()?;
            let lam = pairing_matrix(&fam)?;
            let conn = gauss_manin_matrix(&fam)?;
            let n = symplectic_normalize(&fam, &lam, &conn)?;
            let sp = symplectic_defect(&n.connection).iter().all(|d| d.is_zero());
            Ok(json!({
                "command": cmd.name(),
                "f": fam.f().to_string(),
                "genus": fam.genus(),
                "change": matrix_json(&n.change),
                "connection": connection_json(&n.connection),
                "symplectic": sp,
            }))
        }
        Command::Periods => {
            let fam = ctx.family()?;
            let lambda = ctx
                .value(&flags.lambda, "lambda")
                .ok_or_else(|| CliError::Usage("periods needs --lambda".into()))?;
            let lambda: Rational = parse_rational(lambda.trim())?;
            let prec = ctx.uint(&flags.prec, "prec")?.unwrap_or(12) as u32;
            let oracle = PeriodOracle::new(&fam, &lambda, prec)?;
            let pm = oracle.period_matrix();
            let tau = beta_blocks(&pm)?;
            Ok(json!({
                "command": cmd.name(),
                "f": fam.f().to_string(),
                "genus": pm.genus(),
                "lambda": pm.lambda.to_string(),
                "prec": prec,
                "branch_points": oracle.branch_points().iter().map(|c| complex(*c)).collect::<Vec<_>>(),
                "cycles": oracle.cycles(),
                "periods": complex_matrix(&pm.periods),
                "scalar": complex(pm.scalar),
                "riemann_residual": pm.riemann_residual,
                "error_estimate": pm.error_estimate,
                "tau": complex_matrix(&tau),
            }))
        }
    }
}
