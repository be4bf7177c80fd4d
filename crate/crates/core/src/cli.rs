//! Command-line front end. `run` returns the process exit code so that it can
//! be driven from tests with in-memory writers.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::family::build_family;
use crate::fourier::change_of_basis;
use crate::nonabelian::basis::{
    hyperplane_check, piece_partition, s3_new_basis, verify_triangular, BasisDocument, NewBasis, S3Variant,
    TriangularReport, Violation,
};
use crate::nonabelian::characters::GroupData;
use crate::nonabelian::transform::{group_by_name, nonabelian_ft, FtMatrix};
use crate::report::{run_suite, Report, Suite};

/// Largest dimension for which the change-of-basis matrix is computed.
pub const MATRIX_MAX_DIM: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "trifourier", version, about = "Exact checks of a triangular Fourier transform over F2 and of non-abelian Fourier matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the family F(V), one fiber per line.
    Family {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = FamilyFormat::Text)]
        format: FamilyFormat,
    },
    /// Print the matrix of the Fourier transform in the family basis.
    Matrix {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Json)]
        format: MatrixFormat,
    },
    /// Run verification suites for one dimension.
    Verify {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Checks of the non-abelian Fourier transform of a small symmetric group.
    Nonabelian {
        /// s2, s3, s4, s5, or a product such as s3xs2.
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = VariantArg::G2)]
        variant: VariantArg,
        #[arg(long, value_enum)]
        check: NonabelianCheck,
        /// New-basis JSON file; required for `newbasis` on s4 and s5.
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MatrixFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SuiteArg {
    All,
    Family,
    Tau,
    Fourier,
    Dihedral,
    Counts,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Family => Suite::Family,
            SuiteArg::Tau => Suite::Tau,
            SuiteArg::Fourier => Suite::Fourier,
            SuiteArg::Dihedral => Suite::Dihedral,
            SuiteArg::Counts => Suite::Counts,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    G2,
    E,
}

impl From<VariantArg> for S3Variant {
    fn from(v: VariantArg) -> S3Variant {
        match v {
            VariantArg::G2 => S3Variant::G2,
            VariantArg::E => S3Variant::E,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum NonabelianCheck {
    Matrix,
    Involution,
    Trace,
    Hyperplane,
    Newbasis,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code: 0 on success, 1 on a failed check or any error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = write!(out, "{rendered}");
                return 0;
            }
            let _ = write!(err, "{rendered}");
            return 1;
        }
    };
    match execute(&cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// `Ok(false)` when a check ran and failed.
pub fn execute(command: &Command, out: &mut dyn Write) -> Result<bool> {
    match command {
        Command::Family { dim, format } => {
            let family = build_family(*dim)?;
            match format {
                FamilyFormat::Text => {
                    for line in family.table_lines() {
                        writeln!(out, "{line}")?;
                    }
                }
                FamilyFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&family.to_document())?)?,
            }
            Ok(true)
        }
        Command::Matrix { dim, format } => {
            check_matrix_dim(*dim)?;
            let cob = change_of_basis(&build_family(*dim)?)?;
            match format {
                MatrixFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&cob.to_document())?)?,
                MatrixFormat::Csv => write!(out, "{}", cob.to_csv())?,
            }
            Ok(true)
        }
        Command::Verify { dim, suite, format } => {
            check_matrix_dim(*dim)?;
            let report = run_suite(*dim, (*suite).into())?;
            emit(out, &report, *format)?;
            Ok(report.passed())
        }
        Command::Nonabelian {
            group,
            variant,
            check,
            basis,
            format,
        } => {
            let data = group_by_name(group)?;
            let ft = nonabelian_ft(&data);
            let report = nonabelian_report(&data, &ft, (*variant).into(), *check, basis.as_deref(), out, *format)?;
            if let Some(r) = report {
                emit(out, &r, *format)?;
                return Ok(r.passed());
            }
            Ok(true)
        }
    }
}

fn check_matrix_dim(dim: usize) -> Result<()> {
    if dim % 2 == 1 {
        return Err(Error::OddDimension(dim));
    }
    if dim > MATRIX_MAX_DIM {
        return Err(Error::DimensionCap { dim, cap: MATRIX_MAX_DIM });
    }
    Ok(())
}

fn emit(out: &mut dyn Write, report: &Report, format: ReportFormat) -> Result<()> {
    match format {
        ReportFormat::Text => writeln!(out, "{report}")?,
        ReportFormat::Json => writeln!(out, "{}", report.to_json())?,
    }
    Ok(())
}

/// Loads a basis document, or the embedded `S₃` basis when no file is given.
pub fn load_basis(ft: &FtMatrix, variant: S3Variant, path: Option<&std::path::Path>) -> Result<NewBasis> {
    let doc: BasisDocument = match path {
        Some(p) => serde_json::from_str(&std::fs::read_to_string(p)?)?,
        None if ft.group == "s3" => s3_new_basis(variant),
        None => {
            return Err(Error::Usage(format!(
                "--check newbasis for {} requires --basis FILE",
                ft.group
            )))
        }
    };
    NewBasis::from_document(&doc, ft)
}

fn nonabelian_report(
    data: &GroupData,
    ft: &FtMatrix,
    variant: S3Variant,
    check: NonabelianCheck,
    basis: Option<&std::path::Path>,
    out: &mut dyn Write,
    format: ReportFormat,
) -> Result<Option<Report>> {
    let mut r = Report::new(format!("nonabelian {}", ft.group));
    match check {
        NonabelianCheck::Matrix => {
            writeln!(out, "{}", serde_json::to_string_pretty(&ft.to_document())?)?;
            return Ok(None);
        }
        NonabelianCheck::Involution => {
            r.push("characters", data.validate().is_ok(), "centralizer character tables pass orthogonality");
            r.push("symmetric", ft.is_symmetric(), format!("{}x{} matrix", ft.len(), ft.len()));
            r.push("involution", ft.is_involution(), "F^2 = 1");
        }
        NonabelianCheck::Trace => {
            let trace = ft.trace();
            if format == ReportFormat::Text {
                writeln!(out, "{trace}")?;
                return Ok(None);
            }
            r.push(
                "trace",
                true,
                format!("{trace}; entries real: {}, rational: {}", ft.is_real(), ft.is_rational()),
            );
        }
        NonabelianCheck::Hyperplane => {
            if ft.group != "s5" {
                return Err(Error::UnsupportedGroup(format!("the hyperplane check is for s5, not {}", ft.group)));
            }
            let h = hyperplane_check(ft)?;
            let details = match &h.scalar {
                Some(l) => format!("φ∘F = ({l})·φ"),
                None => {
                    let nonzero: Vec<String> = h
                        .residual
                        .iter()
                        .zip(&ft.labels)
                        .filter(|(v, _)| !v.is_zero())
                        .map(|(v, l)| format!("{l}: {v}"))
                        .collect();
                    format!("not a multiple; residual {}", nonzero.join(", "))
                }
            };
            r.push("hyperplane", h.passed(), details);
        }
        NonabelianCheck::Newbasis => {
            let nb = load_basis(ft, variant, basis)?;
            let pieces = piece_partition(&ft.group)?;
            let t = verify_triangular(ft, &nb, &pieces)?;
            push_triangular(&mut r, &t);
        }
    }
    Ok(Some(r))
}

fn push_triangular(r: &mut Report, t: &TriangularReport) {
    let details = match &t.violation {
        None => "upper triangular in piece order".to_string(),
        Some(v) => describe_violation(v),
    };
    r.push("triangular", t.passed(), details);
    let observed: Vec<String> = t
        .pieces
        .iter()
        .map(|p| p.observed_sign.map_or("?".into(), |s| s.to_string()))
        .collect();
    let expected: Vec<String> = t.pieces.iter().map(|p| p.expected_sign.to_string()).collect();
    if !t.pieces.is_empty() {
        r.push(
            "signs",
            t.pieces.iter().all(|p| p.observed_sign == Some(p.expected_sign)),
            format!("observed {}, expected {}", observed.join(","), expected.join(",")),
        );
        let fields: Vec<String> = t.pieces.iter().map(|p| format!("{:?}", p.field)).collect();
        r.push("fields", true, format!("off-diagonal coefficients per piece: {}", fields.join(",")));
    }
    if t.group == "s5" && t.violation.is_none() {
        let outside: Vec<String> = t.outside_hyperplane.iter().map(|l| format!("hat{l}")).collect();
        r.push("hyperplane-membership", true, format!("basis elements outside H: [{}]", outside.join(", ")));
    }
}

pub fn describe_violation(v: &Violation) -> String {
    match v {
        Violation::Coverage { missing, extra } => {
            let show = |v: &[crate::nonabelian::transform::MLabel]| v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
            format!("pieces and basis do not match: missing [{}], extra [{}]", show(missing), show(extra))
        }
        Violation::NonIntegral { hat } => format!("expansion of hat{hat} has a non-integer coefficient"),
        Violation::NotUnimodular { determinant } => format!("expansion matrix has determinant {determinant}, not ±1"),
        Violation::OffDiagonal {
            hat,
            hat_piece,
            target,
            target_piece,
            coefficient,
        } => format!(
            "F(hat{hat}) (piece {hat_piece}) has coefficient {coefficient} on hat{target} (piece {target_piece})"
        ),
        Violation::Diagonal {
            hat,
            piece,
            value,
            expected,
        } => format!("F(hat{hat}) (piece {piece}) has diagonal coefficient {value}, expected {expected}"),
    }
}

