use clap::{Args, Parser, Subcommand, ValueEnum};

const AFTER_HELP: &str = "\
INPUT is an element expression such as \"1 + 2*e1 - 3/4*e12\" (blades e1..e9,
digits strictly increasing) or a JSON coefficient array ordered by blade mask
0..2^n-1, where bit i-1 of the mask selects e_i: [a, a1, a2, a12, ...].

Exit status: 0 success, 1 domain error (NOT_INVERTIBLE, GENERATOR_OUT_OF_RANGE,
failed verification), 2 usage or parse error.";

/// Arithmetic in the commutative Clifford analogues DL(p,q).
#[derive(Debug, Parser)]
#[command(name = "dlpq", version, after_help = AFTER_HELP)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Signature "p,q": p generators square to +1, q to -1 (required).
    #[arg(long, short = 's', global = true, value_name = "P,Q")]
    pub signature: Option<String>,

    /// Coefficient field.
    #[arg(
        long,
        short = 'b',
        global = true,
        env = "DLPQ_BACKEND",
        default_value = "float64"
    )]
    pub backend: Backend,

    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Replace the input by its conjugate U^(A), A a comma-separated
    /// generator list such as "1,3".
    #[arg(long, global = true, value_name = "LIST")]
    pub conjugate: Option<String>,

    /// Use a seeded random element instead of INPUT.
    #[arg(long, global = true, value_name = "SEED")]
    pub random: Option<u64>,

    /// Relative tolerance for float equality checks.
    #[arg(long, global = true, value_name = "REL")]
    pub tol_equality: Option<f64>,

    /// Float singularity threshold: |det| <= REL * max|u|^N.
    #[arg(long, global = true, value_name = "REL")]
    pub tol_singular: Option<f64>,

    /// Allowed non-scalar residue in products of conjugates.
    #[arg(long, global = true, value_name = "REL")]
    pub tol_grade_leak: Option<f64>,

    /// Float witness acceptance: |UV| <= REL * |U| |V|.
    #[arg(long, global = true, value_name = "REL")]
    pub tol_witness: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Float64,
    Rational,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the element in canonical form.
    Eval(Input),
    /// Determinant of the regular representation.
    Det {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "recursive")]
        method: DetMethod,
    },
    /// Trace of the regular representation.
    Trace(Input),
    /// Characteristic polynomial det(U - λ), highest degree first.
    Charpoly {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "recursive")]
        method: CharpolyMethod,
    },
    /// Adjoint: Adj(U) with U Adj(U) = Det(U).
    Adjoint {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "recursive")]
        method: AdjointMethod,
    },
    /// Multiplicative inverse.
    Inverse(Input),
    /// Regular matrix representation.
    Matrix {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "pretty")]
        format: MatrixFormat,
    },
    /// Unit or zero divisor, with a witness V != 0, UV = 0 for the latter.
    Witness(Input),
    /// Run invariant checks on the element.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
}

#[derive(Debug, Args)]
pub struct Input {
    /// Expression or JSON coefficient array.
    #[arg(value_name = "INPUT", allow_hyphen_values = true)]
    pub text: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DetMethod {
    Recursive,
    Product,
    Fl,
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CharpolyMethod {
    Recursive,
    Symmetric,
    Fl,
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AdjointMethod {
    Recursive,
    Product,
    Fl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Pretty,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Conjugation,
    Det,
    Charpoly,
    Inverse,
    Trace,
    ZeroDivisor,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval(_) => "eval",
            Command::Det { .. } => "det",
            Command::Trace(_) => "trace",
            Command::Charpoly { .. } => "charpoly",
            Command::Adjoint { .. } => "adjoint",
            Command::Inverse(_) => "inverse",
            Command::Matrix { .. } => "matrix",
            Command::Witness(_) => "witness",
            Command::Verify { .. } => "verify",
        }
    }

    pub fn input(&self) -> &Input {
        match self {
            Command::Eval(i) | Command::Trace(i) | Command::Inverse(i) | Command::Witness(i) => i,
            Command::Det { input, .. }
            | Command::Charpoly { input, .. }
            | Command::Adjoint { input, .. }
            | Command::Matrix { input, .. }
            | Command::Verify { input, .. } => input,
        }
    }
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Float64 => "float64",
            Backend::Rational => "rational",
        }
    }
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Conjugation => "conjugation",
            Suite::Det => "det",
            Suite::Charpoly => "charpoly",
            Suite::Inverse => "inverse",
            Suite::Trace => "trace",
            Suite::ZeroDivisor => "zero-divisor",
        }
    }
}
