use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use skewcoh::bases::io::{format_bases, parse_bases};
use skewcoh::bases::{check_amub, check_mub, standard_amubs, AmubLabel};
use skewcoh::channels::{dynamics_csv, dynamics_curve, unit_grid, ChannelKind};
use skewcoh::coherence::{
    cf_bd, cf_bd_sum, cf_isotropic, cf_werner, cf_xz_a1, cf_xz_a1_printed, cf_xz_sum,
    cf_xz_sum_printed, coherence_numeric, l1_coherence, relative_entropy_coherence,
};
use skewcoh::numfmt::sig;
use skewcoh::states::{
    bell_diagonal, isotropic, werner, x_state_z, BellDiagonalParams, DensityMatrix, IsotropicParam,
    WernerParam, XStateZParams,
};
use skewcoh::surfaces::{
    curve_csv, extract_isosurface, field_csv, isotropic_curve, mesh_obj, mesh_ply, sample_bd_field,
    sample_channel_field, sample_xz_field, werner_curve, FieldMeasure, ScalarField3D,
};
use skewcoh::verify::{run_suite, Suite, VerifyConfig, PRINTED_REPORT_TOL};

use crate::args::{
    BasesArgs, CoherenceArgs, CurveArgs, CurveFamily, DynamicsArgs, Family, FieldSpec, MeshFormat,
    SurfaceArgs, VerifyArgs,
};
use crate::error::{CliError, CliResult};

const REPORT_DIGITS: usize = 12;

fn require<T>(value: Option<T>, flag: &str, what: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("{what} requires --{flag}")))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

fn warn(message: &str) {
    eprintln!("warning: {message}");
}

enum State {
    Bell(BellDiagonalParams),
    Werner(WernerParam),
    Isotropic(IsotropicParam),
    Xz(XStateZParams),
}

impl State {
    fn from_args(args: &CoherenceArgs) -> CliResult<Self> {
        Ok(match args.family {
            Family::Bell => {
                let c = require(args.c, "c", "--family bell")?.0;
                State::Bell(BellDiagonalParams::from_array(c)?)
            }
            Family::Werner => {
                State::Werner(WernerParam::new(require(args.p, "p", "--family werner")?)?)
            }
            Family::Isotropic => State::Isotropic(IsotropicParam::new(require(
                args.fidelity,
                "f",
                "--family isotropic",
            )?)?),
            Family::Xz => {
                let [c1, c2, c3] = require(args.c, "c", "--family xz")?.0;
                State::Xz(XStateZParams::new(
                    args.r.unwrap_or(0.0),
                    args.s.unwrap_or(0.0),
                    c1,
                    c2,
                    c3,
                )?)
            }
        })
    }

    fn describe(&self) -> String {
        let s = |x: f64| sig(x, REPORT_DIGITS);
        match self {
            State::Bell(p) => format!("bell c=({},{},{})", s(p.c1()), s(p.c2()), s(p.c3())),
            State::Werner(p) => format!("werner p={}", s(p.p())),
            State::Isotropic(f) => format!("isotropic F={}", s(f.f())),
            State::Xz(p) => format!(
                "xz r={} s={} c=({},{},{})",
                s(p.r),
                s(p.s),
                s(p.c[0]),
                s(p.c[1]),
                s(p.c[2])
            ),
        }
    }

    fn density(&self) -> CliResult<DensityMatrix> {
        Ok(match self {
            State::Bell(p) => bell_diagonal(p),
            State::Werner(p) => werner(*p),
            State::Isotropic(f) => isotropic(*f),
            State::Xz(p) => x_state_z(p)?,
        })
    }

    /// Closed form and, for the X state, the printed display.
    fn closed_forms(&self, measure: FieldMeasure) -> CliResult<(Option<f64>, Option<f64>)> {
        let copies = match measure {
            FieldMeasure::Sum => 3.0,
            FieldMeasure::Basis(_) => 1.0,
        };
        Ok(match (self, measure) {
            (State::Bell(p), FieldMeasure::Basis(b)) => (Some(cf_bd(p, b).value()), None),
            (State::Bell(p), FieldMeasure::Sum) => (Some(cf_bd_sum(p)), None),
            (State::Werner(p), _) => (Some(copies * cf_werner(*p).value()), None),
            (State::Isotropic(f), _) => (Some(copies * cf_isotropic(*f).value()), None),
            (State::Xz(p), FieldMeasure::Basis(AmubLabel::A1)) => (
                Some(cf_xz_a1(p)?.value()),
                Some(cf_xz_a1_printed(p).unwrap_or(f64::NAN)),
            ),
            (State::Xz(p), FieldMeasure::Sum) => (Some(cf_xz_sum(p)?), Some(cf_xz_sum_printed(p))),
            (State::Xz(_), _) => (None, None),
        })
    }
}

pub fn coherence(args: &CoherenceArgs, out_dir: &Path) -> CliResult<()> {
    let state = State::from_args(args)?;
    let rho = state.density()?;
    let numeric = match args.basis {
        FieldMeasure::Basis(b) => coherence_numeric(&rho, b.basis())?.value(),
        FieldMeasure::Sum => AmubLabel::ALL
            .iter()
            .map(|b| coherence_numeric(&rho, b.basis()).map(|c| c.value()))
            .sum::<skewcoh::Result<f64>>()?,
    };
    let (closed, printed) = state.closed_forms(args.basis)?;
    let fmt = |x: f64| sig(x, REPORT_DIGITS);

    let mut out = String::new();
    out.push_str(&format!("state     {}\n", state.describe()));
    out.push_str(&format!("basis     {}\n", args.basis));
    out.push_str(&format!("numeric   {}\n", fmt(numeric)));
    match closed {
        Some(c) => {
            out.push_str(&format!("closed    {}\n", fmt(c)));
            out.push_str(&format!("diff      {}\n", sig((c - numeric).abs(), 3)));
            if (c - numeric).abs() > PRINTED_REPORT_TOL {
                warn(&format!(
                    "closed form differs from numeric by {}",
                    sig((c - numeric).abs(), 3)
                ));
            }
        }
        None => out.push_str("closed    n/a\n"),
    }
    if let Some(p) = printed {
        let gap = (p - numeric).abs();
        out.push_str(&format!("printed   {}\n", fmt(p)));
        out.push_str(&format!("printed-diff {}\n", sig(gap, 3)));
        if gap.is_nan() || gap > PRINTED_REPORT_TOL {
            warn(&format!(
                "long-form display differs from numeric by {}",
                sig(gap, 3)
            ));
        }
    }
    if let FieldMeasure::Basis(b) = args.basis {
        out.push_str(&format!(
            "l1        {}\n",
            fmt(l1_coherence(&rho, b.basis())?)
        ));
        out.push_str(&format!(
            "rel-entropy {}\n",
            fmt(relative_entropy_coherence(&rho, b.basis())?)
        ));
    }
    print!("{out}");

    if let Some(name) = &args.csv {
        let opt = |x: Option<f64>| x.map_or(String::new(), |v| sig(v, REPORT_DIGITS));
        let csv = format!(
            "state,basis,numeric,closed,printed\n{},{},{},{},{}\n",
            state.describe(),
            args.basis,
            fmt(numeric),
            opt(closed),
            opt(printed)
        );
        let path = write_file(out_dir, &name.to_string_lossy(), &csv)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn check_unit(name: &str, v: f64) -> CliResult<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--{name} must lie in [0, 1], got {v}"
        )))
    }
}

fn check_signed_unit(name: &str, v: f64) -> CliResult<()> {
    if (-1.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--{name} must lie in [-1, 1], got {v}"
        )))
    }
}

pub fn surface(args: &SurfaceArgs, out_dir: &Path) -> CliResult<()> {
    if args.resolution < 2 {
        return Err(CliError::Usage("--resolution must be at least 2".into()));
    }
    if let Some(&bad) = args.levels.iter().find(|l| **l < 0.0) {
        return Err(CliError::Usage(format!(
            "--level must be nonnegative, got {bad}"
        )));
    }
    let s9 = |x: f64| sig(x, 9);
    let (field, stem): (ScalarField3D, String) = match args.field {
        FieldSpec::Bell(m) => (sample_bd_field(m, args.resolution)?, args.field.slug()),
        FieldSpec::Xz(m) => {
            let (r, s) = (args.r.unwrap_or(0.0), args.s.unwrap_or(0.0));
            check_signed_unit("r", r)?;
            check_signed_unit("s", s)?;
            let stem = format!("{}_r{}_s{}", args.field.slug(), s9(r), s9(s));
            (sample_xz_field(r, s, m, args.resolution)?, stem)
        }
        FieldSpec::Channel(kind) => {
            let p = require(args.p, "p", "a channel field")?;
            check_unit("p", p)?;
            let stem = format!("{}_p{}", args.field.slug(), s9(p));
            (sample_channel_field(kind, p, args.resolution)?, stem)
        }
    };
    let max = field.max_value();
    for &level in &args.levels {
        let mesh = extract_isosurface(&field, level)?;
        mesh.validate()?;
        if mesh.is_empty() {
            let max = max.map_or("none".to_string(), |m| sig(m, 9));
            warn(&format!(
                "level {} gives an empty mesh for {} (field maximum {max})",
                s9(level),
                args.field.slug()
            ));
        }
        let base = format!("{stem}_level{}", s9(level));
        if matches!(args.format, MeshFormat::Obj | MeshFormat::Both) {
            let path = write_file(out_dir, &format!("{base}.obj"), &mesh_obj(&mesh))?;
            println!("{}", path.display());
        }
        if matches!(args.format, MeshFormat::Ply | MeshFormat::Both) {
            let path = write_file(out_dir, &format!("{base}.ply"), &mesh_ply(&mesh))?;
            println!("{}", path.display());
        }
    }
    if args.field_csv {
        let path = write_file(out_dir, &format!("{stem}_field.csv"), &field_csv(&field))?;
        println!("{}", path.display());
    }
    Ok(())
}

pub fn dynamics(args: &DynamicsArgs, out_dir: &Path) -> CliResult<()> {
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let c = BellDiagonalParams::from_array(args.c.0)?;
    let grid = unit_grid(args.points);
    let mut outputs = Vec::new();
    for kind in ChannelKind::ALL {
        let curve = dynamics_curve(kind, &c, args.basis, &grid)?;
        outputs.push((format!("dynamics_{kind}.csv"), dynamics_csv(&curve)));
    }
    for (name, csv) in outputs {
        println!("{}", write_file(out_dir, &name, &csv)?.display());
    }
    Ok(())
}

pub fn verify(args: &VerifyArgs) -> CliResult<()> {
    let config = VerifyConfig {
        seed: args.seed,
        samples: args.samples,
        resolution: args.resolution,
    };
    if config.resolution < 2 {
        return Err(CliError::Usage("--resolution must be at least 2".into()));
    }
    let suites: Vec<Suite> = if args.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        args.suites.clone()
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let mut failed = Vec::new();
    for suite in &suites {
        let report = run_suite(*suite, &config)?;
        write!(lock, "{report}").ok();
        if !report.passed() {
            failed.push(suite.name());
        }
    }
    writeln!(
        lock,
        "{}/{} suites passed (seed {})",
        suites.len() - failed.len(),
        suites.len(),
        config.seed
    )
    .ok();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "failed suites: {}",
            failed.join(", ")
        )))
    }
}

pub fn curve(args: &CurveArgs, out_dir: &Path) -> CliResult<()> {
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let grid = unit_grid(args.points);
    let (curve, name) = match args.family {
        CurveFamily::Werner => (werner_curve(&grid)?, "werner_curve.csv"),
        CurveFamily::Isotropic => (isotropic_curve(&grid)?, "isotropic_curve.csv"),
    };
    println!(
        "{}",
        write_file(out_dir, name, &curve_csv(&curve))?.display()
    );
    Ok(())
}

pub fn bases(args: &BasesArgs) -> CliResult<()> {
    let Some(path) = &args.input else {
        print!("{}", format_bases(standard_amubs().bases()));
        return Ok(());
    };
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let bases = parse_bases(&text)?;
    let dim = bases.first().map_or(0, |b| b.dim());
    println!("{} bases of dimension {dim}", bases.len());
    let mub = check_mub(&bases)?;
    let mut passed = mub.passed(1e-12);
    print!(
        "mutually unbiased: {}\n{mub}",
        if passed { "yes" } else { "no" }
    );
    if let Ok(amub) = check_amub(&bases) {
        let ok = amub.passed(1e-12);
        print!(
            "AMUB overlap 1/sqrt(dim): {}\n{amub}",
            if ok { "yes" } else { "no" }
        );
        passed |= ok;
    }
    if passed {
        Ok(())
    } else {
        Err(CliError::Verification("bases are not unbiased".into()))
    }
}
