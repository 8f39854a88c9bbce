//! Command-line front door. One subcommand per invocation; results go to
//! stdout as deterministic JSON, with optional CSV side outputs.
//!
//! Exit codes: 0 success, 1 validation/precondition failure, 2 numerical
//! failure, 64 usage errors.

use nalgebra::DVector;

use crate::almost_abelian::{
    aa_curvature, aa_nullity, construct_example5, integrality_check, lattice_lambda_search,
    nul1_group, AlmostAbelianGroup, IntegralityMode,
};
use crate::catalog::{classify_unimodular, milnor_algebra, table_row_check, MilnorTriple, TableFamily, TableRowReport};
use crate::error::Error;
use crate::lie_metric::{curvature, growth_vector, sectional_curvature, LieMetricSpace};
use crate::linalg;
use crate::nullity::{kappa_scan, nullity_index, radon_hurwitz, NullityResult};
use crate::report::Json;
use crate::splitting::{
    scalar_riccati_blowup, trace_limits, write_trace_csv, SplittingState, TraceLimitReport,
};

const USAGE: &str = "\
usage: lie-nullity <subcommand> [flags]

subcommands:
  validate       --input <path>                      check a structure-constant algebra
  curvature      --input <path>                      connection, curvature, Ricci, scalar
  nullity        --input <path> --kappa <f> [--tol <f>]
  nullity-scan   --input <path> --range a:b:n [--tol <f>] [--csv <path>]
  growth         --input <path> --span i,j,...       growth vector of a frame subspace
  milnor         --lambda l1,l2,l3 [--table-check FAM:theta]
  table-check    --family FAM:theta                  FAM in {T1F1, T1F2, T2}
  splitting      --input <path> --kappa <f> [--range a:b:n] [--csv <path>] [--kd0 <f>]
  aa             --input <path>                      almost-Abelian curvature
  aa-nullity     --input <path>                      almost-Abelian 0-nullity
  lattice        --input <path> (--lambda <f> [--mode linear|exponential] | --bound <int>) [--tol <f>]
  example5                                           the 5-dimensional finite-volume action
  nul1-group     --m <even int>
  radon-hurwitz  --m <int>
  blowup         --beta0 <f> --delta <f>

Ranges a:b:n are inclusive with n samples. Algebra input JSON:
  {\"dim\": n, \"brackets\": [{\"i\":0,\"j\":1,\"coeffs\":[...]}], \"metric\": [[...]]}
(\"metric\" optional, identity by default). Matrix input JSON: {\"m\": k, \"A\": [[...]]}.
Every subcommand accepts --help.";

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult = Result<(Json, i32), CliError>;

/// Runs one invocation. `args` excludes the program name.
pub fn run(args: &[String]) -> i32 {
    let Some(cmd) = args.first() else {
        eprintln!("{USAGE}");
        return 64;
    };
    if cmd == "--help" || cmd == "help" {
        println!("{USAGE}");
        return 0;
    }
    let rest = &args[1..];
    if rest.iter().any(|a| a == "--help") {
        println!("{}", subcommand_help(cmd));
        return 0;
    }
    match dispatch(cmd, rest) {
        Ok((json, code)) => {
            println!("{json}");
            code
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("{msg}\n\n{USAGE}");
            64
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidInput(_) | Error::FlatGroup | Error::Nilpotent(_) => 1,
                _ => 2,
            }
        }
    }
}

fn subcommand_help(cmd: &str) -> String {
    for line in USAGE.lines() {
        let trimmed = line.trim_start();
        if trimmed.starts_with(cmd)
            && trimmed[cmd.len()..]
                .chars()
                .next()
                .map_or(true, |c| c == ' ')
        {
            return format!("usage: lie-nullity {trimmed}");
        }
    }
    USAGE.to_string()
}

fn dispatch(cmd: &str, rest: &[String]) -> CliResult {
    match cmd {
        "validate" => cmd_validate(rest),
        "curvature" => cmd_curvature(rest),
        "nullity" => cmd_nullity(rest),
        "nullity-scan" => cmd_nullity_scan(rest),
        "growth" => cmd_growth(rest),
        "milnor" => cmd_milnor(rest),
        "table-check" => cmd_table_check(rest),
        "splitting" => cmd_splitting(rest),
        "aa" => cmd_aa(rest),
        "aa-nullity" => cmd_aa_nullity(rest),
        "lattice" => cmd_lattice(rest),
        "example5" => cmd_example5(rest),
        "nul1-group" => cmd_nul1_group(rest),
        "radon-hurwitz" => cmd_radon_hurwitz(rest),
        "blowup" => cmd_blowup(rest),
        other => Err(CliError::Usage(format!("unknown subcommand `{other}`"))),
    }
}

struct Flags {
    values: Vec<(String, String)>,
}

impl Flags {
    fn parse(args: &[String], allowed: &[&str]) -> Result<Flags, CliError> {
        let mut values = Vec::new();
        let mut it = args.iter();
        while let Some(key) = it.next() {
            if !key.starts_with("--") {
                return Err(CliError::Usage(format!("expected a flag, got `{key}`")));
            }
            if !allowed.contains(&key.as_str()) {
                return Err(CliError::Usage(format!("unknown flag `{key}`")));
            }
            let Some(value) = it.next() else {
                return Err(CliError::Usage(format!("flag `{key}` needs a value")));
            };
            values.push((key.clone(), value.clone()));
        }
        Ok(Flags { values })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn required(&self, key: &str) -> Result<&str, CliError> {
        self.get(key)
            .ok_or_else(|| CliError::Usage(format!("missing required flag `{key}`")))
    }

    fn f64_opt(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.get(key).map(|v| parse_f64(key, v)).transpose()
    }

    fn f64_required(&self, key: &str) -> Result<f64, CliError> {
        parse_f64(key, self.required(key)?)
    }

    fn tol(&self, default: f64) -> Result<f64, CliError> {
        Ok(self.f64_opt("--tol")?.unwrap_or(default))
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64, CliError> {
    v.parse::<f64>()
        .map_err(|_| CliError::Usage(format!("flag `{key}` expects a number, got `{v}`")))
}

fn parse_range(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "range must look like a:b:n, got `{spec}`"
        )));
    }
    let a = parse_f64("--range", parts[0])?;
    let b = parse_f64("--range", parts[1])?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| CliError::Usage(format!("range sample count must be an integer, got `{}`", parts[2])))?;
    if n == 0 {
        return Err(CliError::Usage("range needs at least one sample".into()));
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    Ok((0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect())
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Lib(Error::InvalidInput(format!("cannot read `{path}`: {e}"))))
}

fn load_space(flags: &Flags) -> Result<LieMetricSpace, CliError> {
    let text = read_file(flags.required("--input")?)?;
    Ok(LieMetricSpace::from_json(&text)?)
}

fn load_space_validated(flags: &Flags) -> Result<LieMetricSpace, CliError> {
    let space = load_space(flags)?;
    let report = space.validate();
    if !report.passed {
        return Err(CliError::Lib(Error::InvalidInput(format!(
            "algebra failed validation: antisymmetry {:e}, jacobi {:e}, metric min eigenvalue {:e}",
            report.antisymmetry_violation, report.jacobi_residual, report.metric_min_eigenvalue
        ))));
    }
    Ok(space)
}

fn load_group(flags: &Flags) -> Result<AlmostAbelianGroup, CliError> {
    let text = read_file(flags.required("--input")?)?;
    Ok(AlmostAbelianGroup::from_json(&text)?)
}

fn nullity_json(res: &NullityResult) -> Json {
    Json::obj(vec![
        ("kappa", Json::Float(res.kappa)),
        ("index", Json::Int(res.index as i64)),
        ("basis", Json::vectors(&res.basis)),
        ("residual", Json::Float(res.residual)),
    ])
}

fn trace_limits_json(report: &TraceLimitReport) -> Json {
    Json::obj(vec![
        ("k_plus", Json::Int(report.k_plus as i64)),
        ("k_minus", Json::Int(report.k_minus as i64)),
        ("limit_plus", Json::Float(report.limit_plus)),
        ("limit_minus", Json::Float(report.limit_minus)),
        ("sigma", Json::floats(&report.sigma)),
        (
            "trace_identity_residual",
            Json::Float(report.trace_identity_residual),
        ),
    ])
}

fn table_row_json(report: &TableRowReport) -> Json {
    Json::obj(vec![
        ("family", Json::Str(report.family.to_string())),
        ("theta", Json::Float(report.theta)),
        ("triple", Json::floats(&report.triple)),
        ("label", Json::Str(report.label.to_string())),
        (
            "expected_label",
            report
                .expected_label
                .map_or(Json::Null, |l| Json::Str(l.to_string())),
        ),
        ("scal", Json::Float(report.scal)),
        ("expected_scal", Json::Float(report.expected_scal)),
        ("plane_curvature", Json::Float(report.plane_curvature)),
        (
            "expected_plane_curvature",
            Json::Float(report.expected_plane_curvature),
        ),
        ("nullity_kappa", Json::Float(report.nullity_kappa)),
        ("nullity_index", Json::Int(report.nullity_index as i64)),
        ("expected_index", Json::Int(report.expected_index as i64)),
        ("nullity_axis_angle", Json::Float(report.nullity_axis_angle)),
        ("passed", Json::Bool(report.passed)),
    ])
}

fn cmd_validate(args: &[String]) -> CliResult {
    let flags = Flags::parse(args, &["--input"])?;
    let space = load_space(&flags)?;
    let report = space.validate();
    let json = Json::obj(vec![
        (
            "antisymmetry_violation",
            Json::Float(report.antisymmetry_violation),
        ),
        ("jacobi_residual", Json::Float(report.jacobi_residual)),
        (
            "metric_symmetry_violation",
            Json::Float(report.metric_symmetry_violation),
        ),
        (
            "metric_min_eigenvalue",
            Json::Float(report.metric_min_eigenvalue),
        ),
        ("passed", Json::Bool(report.passed)),
    ]);
    Ok((json, if report.passed { 0 } else { 1 }))
}

fn cmd_curvature(args: &[String]) -> CliResult {
    let flags = Flags::parse(args, &["--input"])?;
    let space = load_space_validated(&flags)?;
    let curv = curvature(&space)?;
    let n = curv.dim;
    let mut planes = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let u = DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 });
            let v = DVector::from_fn(n, |r, _| if r == j { 1.0 } else { 0.0 });
            if let Ok(k) = sectional_curvature(&curv, space.metric(), &u, &v) {
                planes.push(Json::obj(vec![
                    ("i", Json::Int(i as i64)),
                    ("j", Json::Int(j as i64)),
                    ("K", Json::Float(k)),
                ]));
            }
        }
    }
    let riem = Json::Array(
        (0..n)
            .map(|i| {
                Json::Array(
                    (0..n)
                        .map(|j| {
                            Json::Array(
                                (0..n)
                                    .map(|k| {
                                        Json::floats((0..n).map(|l| &curv.riem[(i, j, k, l)]))
                                    })
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
    );
    let json = Json::obj(vec![
        ("dim", Json::Int(n as i64)),
        ("scal", Json::Float(curv.scal)),
        ("ricci", Json::matrix(&curv.ricci)),
        ("sectional_frame_planes", Json::Array(planes)),
        ("riem", riem),
    ]);
    Ok((json, 0))
}

fn cmd_nullity(args: &[String]) -> CliResult {
    let flags = Flags::parse(args, &["--input", "--kappa", "--tol"])?;
    let space = load_space_validated(&flags)?;
    let kappa = flags.f64_required("--kappa")?;
    let tol = flags.tol(linalg::RTOL_DEFAULT)?;
    let curv = curvature(&space)?;
    let res = nullity_index(&curv, space.metric(), kappa, tol)?;
    Ok((nullity_json(&res), 0))
}

fn cmd_nullity_scan(args: &[String]) -> CliResult {
    let flags = Flags::parse(args, &["--input", "--range", "--tol", "--csv"])?;
    let space = load_space_validated(&flags)?;
    let grid = parse_range(flags.required("--range")?)?;
    let tol = flags.tol(linalg::RTOL_DEFAULT)?;
    let curv = curvature(&space)?;
    let scan = kappa_scan(&curv, space.metric(), &grid, tol)?;
    if let Some(path) = flags.get("--csv") {
        let mut text = String::from("kappa,sigma_min,index\n");
        for s in &scan.samples {
            text.push_str(&format!("{:.16e},{:.16e},{}\n", s.kappa, s.sigma_min, s.index));
        }
        std::fs::write(path, text)
            .map_err(|e| CliError::Lib(Error::InvalidInput(format!("cannot write `{path}`: {e}"))))?;
    }
    let samples = Json::Array(
        scan.samples
            .iter()
            .map(|s| {
                Json::obj(vec![
                    ("kappa", Json::Float(s.kappa)),
                    ("sigma_min", Json::Float(s.sigma_min)),
                    ("index", Json::Int(s.index as i64)),
                ])
            })
            .collect(),
    );
    let detected = Json::Array(
        scan.detected
            .iter()
            .map(|d| {
                Json::obj(vec![
                    ("kappa", Json::Float(d.kappa)),
                    ("index", Json::Int(d.index as i64)),
                ])
            })
            .collect(),
    );
    let json = Json::obj(vec![("samples", samples), ("detected", detected)]);
    Ok((json, 0))
}

fn cmd_growth(args: &[String]) -> CliResult {
    let flags = Flags::parse(args, &["--input", "--span"])?;
    let space = load_space_validated(&flags)?;
    let span = flags.required("--span")?;
    let indices: Vec<usize> = span
        .split(',')
        .map(|s| {
            s.trim().parse::<usize>().map_err(|_| {
                CliError::Usage(format!("span indices must be integers, got `{s}`"))
            })
        })
        .collect::<Result<_, _>>()?;
    let n = space.dim();
    for &i in &indices {
        if i >= n {
            return Err(CliError::Usage(format!(
                "span index {i} out of range for dim {n}"
            )));
        }
    }
    let d: Vec<DVector<f64>> = indices
        .iter()
        .map(|&i| DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 }))
        .collect();
    let growth = growth_vector(&space, &d);
    let generating = *growth.last().unwrap_or(&0) == n;
    let json = Json::obj(vec![
        (
            "span",
            Json::Array(indices.iter().map(|&i| Json::Int(i as i64)).collect()),
        ),
        (
            "growth",
            Json::Array(growth.iter().map(|&g| Json::Int(g as i64)).collect()),
        ),
        ("bracket_generating", Json::Bool(generating)),
        (
            "step",
            if generating {
                Json::Int(growth.len() as i64)
            } else {
                Json::Null
            },
        ),
    ]);
    Ok((json, 0))
}

fn parse_triple(spec: &str) -> Result<MilnorTriple, CliError> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "--lambda expects three comma-separated numbers, got `{spec}`"
        )));
    }
    Ok(MilnorTriple::new(
        parse_f64("--lambda", parts[0])?,
        parse_f64("--lambda", parts[1])?,
        parse_f64("--lambda", parts[2])?,
    ))
}

fn parse_family(spec: &str) -> Result<(TableFamily, f64), CliError> {
    let (fam, theta) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("expected FAM:theta, got `{spec}`")))?;
    let family: TableFamily = fam
        .parse()
        .map_err(|e: Error| CliError::Usage(e.to_string()))?;
    Ok((family, parse_f64("--family", theta)?))
}

fn cmd_milnor(args: &[String]) -> CliResult {
    let flags = Flags::parse(args, &["--lambda", "--table-check"])?;
    let triple = parse_triple(flags.required("--lambda")?)?;
    let space = milnor_algebra(&triple);
    let curv = curvature(&space)?;
    let basis: Vec<DVector<f64>> = (0..3)
        .map(|i| DVector::from_fn(3, |r, _| if r == i { 1.0 } else { 0.0 }))
        .collect();
    let k = |i: usize, j: usize| sectional_curvature(&curv, space.metric(), &basis[i], &basis[j]);
    let mut pairs = vec![
        (
            "lambda",
            Json::floats(&[triple.lambda1, triple.lambda2, triple.lambda3]),
        ),
        (
            "label",
            Json::Str(classify_unimodular(&triple).to_string()),
        ),
        ("scal", Json::Float(curv.scal)),
        ("K12", Json::Float(k(0, 1)?)),
        ("K13", Json::Float(k(0, 2)?)),
        ("K23", Json::Float(k(1, 2)?)),
    ];
    let mut code = 0;
    if let Some(spec) = flags.get("--table-check") {
        let (family, theta) = parse_family(spec)?;
        let report = table_row_check(family, theta)?;
        if !report.passed {
            code = 1;
        }
        pairs.push(("table_check", table_row_json(&report)));
    }
    Ok((Json::obj(pairs), code))
}

fn cmd_table_check(args: &[String]) -> CliResult {
    let flags = Flags::parse(args, &["--family", "--theta"])?;
    let (family, theta) = match flags.get("--theta") {
        Some(t) => {
            let family: TableFamily = flags
                .required("--family")?
                .parse()
                .map_err(|e: Error| CliError::Usage(e.to_string()))?;
            (family, parse_f64("--theta", t)?)
        }
        None => parse_family(flags.required("--family")?)?,
    };
    let report = table_row_check(family, theta)?;
    let code = if report.passed { 0 } else { 1 };
    Ok((table_row_json(&report), code))
}

fn cmd_splitting(args: &[String]) -> CliResult {
    let flags = Flags::parse(args, &["--input", "--kappa", "--range", "--csv", "--kd0"])?;
    let group_matrix = {
        let text = read_file(flags.required("--input")?)?;
        AlmostAbelianGroup::from_json(&text)?.matrix().clone()
    };
    let kappa = flags.f64_required("--kappa")?;
    let state = SplittingState::new(kappa, group_matrix)?;
    let kd0 = flags.f64_opt("--kd0")?;
    if let Some(path) = flags.get("--csv") {
        let ts = parse_range(
            flags
                .get("--range")
                .ok_or_else(|| CliError::Usage("--csv needs --range".into()))?,
        )?;
        let mut buf = Vec::new();
        write_trace_csv(&mut buf, &state, &ts, kd0)?;
        std::fs::write(path, buf)
            .map_err(|e| CliError::Lib(Error::InvalidInput(format!("cannot write `{path}`: {e}"))))?;
    }
    let mut pairs = vec![
        ("kappa", Json::Float(kappa)),
        ("k", Json::Int(state.conullity() as i64)),
        (
            "first_singularity",
            state.first_singularity().map_or(Json::Null, Json::Float),
        ),
    ];
    if kappa == -1.0 {
        let tl = match trace_limits(state.c0()) {
            Ok(report) => trace_limits_json(&report),
            Err(_) => Json::Null,
        };
        pairs.push(("trace_limits", tl));
    }
    Ok((Json::obj(pairs), 0))
}

fn cmd_aa(args: &[String]) -> CliResult {
    let flags = Flags::parse(args, &["--input"])?;
    let group = load_group(&flags)?;
    let curv = aa_curvature(&group);
    let json = Json::obj(vec![
        ("m", Json::Int(group.ideal_dim() as i64)),
        ("trace", Json::Float(group.matrix().trace())),
        ("unimodular", Json::Bool(group.is_unimodular(1e-12))),
        ("scal", Json::Float(curv.scal)),
        ("ric_xi_xi", Json::Float(curv.ricci[(0, 0)])),
        ("ricci", Json::matrix(&curv.ricci)),
    ]);
    Ok((json, 0))
}

fn cmd_aa_nullity(args: &[String]) -> CliResult {
    let flags = Flags::parse(args, &["--input"])?;
    let group = load_group(&flags)?;
    let basis = aa_nullity(&group)?;
    let json = Json::obj(vec![
        ("index", Json::Int(basis.len() as i64)),
        ("basis", Json::vectors(&basis)),
    ]);
    Ok((json, 0))
}

fn cmd_lattice(args: &[String]) -> CliResult {
    let flags = Flags::parse(args, &["--input", "--lambda", "--mode", "--bound", "--tol"])?;
    let group = load_group(&flags)?;
    let tol = flags.tol(1e-6)?;
    if let Some(lambda) = flags.f64_opt("--lambda")? {
        let mode: IntegralityMode = flags
            .get("--mode")
            .unwrap_or("exponential")
            .parse()
            .map_err(|e: Error| CliError::Usage(e.to_string()))?;
        let check = integrality_check(group.matrix(), lambda, mode, tol)?;
        let json = Json::obj(vec![
            (
                "mode",
                Json::Str(
                    match mode {
                        IntegralityMode::Linear => "linear",
                        IntegralityMode::Exponential => "exponential",
                    }
                    .into(),
                ),
            ),
            ("lambda", Json::Float(lambda)),
            ("integral", Json::Bool(check.integral)),
            ("coefficients", Json::floats(&check.coefficients)),
            (
                "rounded",
                Json::Array(check.rounded.iter().map(|&c| Json::Int(c)).collect()),
            ),
            ("max_deviation", Json::Float(check.max_deviation)),
            ("det", Json::Float(check.det)),
        ]);
        return Ok((json, 0));
    }
    let bound: i64 = flags
        .required("--bound")?
        .parse()
        .map_err(|_| CliError::Usage("--bound expects an integer".into()))?;
    let candidates = lattice_lambda_search(group.matrix(), bound, tol)?;
    let json = Json::obj(vec![
        ("bound", Json::Int(bound)),
        (
            "candidates",
            Json::Array(
                candidates
                    .iter()
                    .map(|c| {
                        Json::obj(vec![
                            ("lambda", Json::Float(c.lambda)),
                            ("trace_target", Json::Int(c.trace_target)),
                            (
                                "coefficients",
                                Json::Array(
                                    c.coefficients.iter().map(|&x| Json::Int(x)).collect(),
                                ),
                            ),
                        ])
                    })
                    .collect(),
            ),
        ),
    ]);
    Ok((json, 0))
}

fn cmd_example5(args: &[String]) -> CliResult {
    Flags::parse(args, &[])?;
    let report = construct_example5()?;
    let json = Json::obj(vec![
        ("alpha", Json::Float(report.alpha)),
        ("beta", Json::Float(report.beta)),
        ("gamma", Json::Float(report.gamma)),
        ("sigma", Json::Float(report.sigma)),
        ("mu", Json::Float(report.mu)),
        ("nu", Json::Float(report.nu)),
        ("a", Json::Float(report.a)),
        ("b", Json::Float(report.b)),
        ("c", Json::Float(report.c)),
        ("A", Json::matrix(&report.matrix)),
        ("charpoly_A", Json::floats(&report.charpoly_a)),
        ("charpoly_B", Json::floats(&report.charpoly_b)),
        ("nullity_index", Json::Int(report.nullity_index as i64)),
        ("nullity_basis", Json::vectors(&report.nullity_basis)),
    ]);
    Ok((json, 0))
}

fn cmd_nul1_group(args: &[String]) -> CliResult {
    let flags = Flags::parse(args, &["--m"])?;
    let m: usize = flags
        .required("--m")?
        .parse()
        .map_err(|_| CliError::Usage("--m expects a positive integer".into()))?;
    let out = nul1_group(m)?;
    let json = Json::obj(vec![
        ("m", Json::Int(m as i64)),
        ("scal", Json::Float(out.scal)),
        ("lambda", Json::Float(out.lambda)),
        (
            "witness_coefficients",
            Json::Array(out.witness.rounded.iter().map(|&c| Json::Int(c)).collect()),
        ),
        ("nullity_index", Json::Int(out.nullity.index as i64)),
    ]);
    Ok((json, 0))
}

fn cmd_radon_hurwitz(args: &[String]) -> CliResult {
    let flags = Flags::parse(args, &["--m"])?;
    let m: u64 = flags
        .required("--m")?
        .parse()
        .map_err(|_| CliError::Usage("--m expects a positive integer".into()))?;
    let rho = radon_hurwitz(m)?;
    let json = Json::obj(vec![
        ("m", Json::Int(m as i64)),
        ("rho", Json::Int(rho as i64)),
    ]);
    Ok((json, 0))
}

fn cmd_blowup(args: &[String]) -> CliResult {
    let flags = Flags::parse(args, &["--beta0", "--delta"])?;
    let beta0 = flags.f64_required("--beta0")?;
    let delta = flags.f64_required("--delta")?;
    let out = scalar_riccati_blowup(beta0, delta)?;
    let json = Json::obj(vec![
        ("beta0", Json::Float(beta0)),
        ("delta", Json::Float(delta)),
        ("bound", Json::Float(out.bound)),
        ("numeric_blowup", Json::Float(out.numeric_blowup)),
    ]);
    Ok((json, 0))
}
