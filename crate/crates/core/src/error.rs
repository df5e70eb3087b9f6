use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong while building or querying the algebraic objects.
///
/// Each variant names the violated precondition; the CLI prints the variant
/// name verbatim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NonPrimeP(u64),
    /// Modulus has the wrong degree or is not monic.
    BadModulus,
    NotIrreducible,
    NotPrimitive,
    /// `p^n` does not fit the supported range.
    FieldTooLarge,
    /// Coefficient vector of the wrong length or with a digit `>= p`.
    MalformedElement,
    DivisionByZero,
    LogOfZero,
    NotADivisor {
        divisor: u64,
        of: u64,
    },
    NotInSubfield,
    ZeroForm,
    NotProperTower,
    AllZeroSeed,
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    NoZeroRun,
    BadFactorization {
        s: usize,
        t: usize,
    },
    NotSubfieldRegime,
    OddCharacteristic,
    OutOfBounds,
    WrongSize {
        expected: usize,
        found: usize,
    },
    EmptyPattern,
    DependentPattern,
    DimensionExceeded {
        total: usize,
        n: usize,
    },
    NoValidShift,
    NotABasis,
    AllZeroPattern,
    NotCoprime,
    BadProduct,
    /// Algebraic column label disagrees with the stored torus values.
    ColumnMismatch {
        column: usize,
    },
    Parse(String),
}

impl Error {
    /// Stable variant name, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonPrimeP(_) => "NonPrimeP",
            Error::BadModulus => "BadModulus",
            Error::NotIrreducible => "NotIrreducible",
            Error::NotPrimitive => "NotPrimitive",
            Error::FieldTooLarge => "FieldTooLarge",
            Error::MalformedElement => "MalformedElement",
            Error::DivisionByZero => "DivisionByZero",
            Error::LogOfZero => "LogOfZero",
            Error::NotADivisor { .. } => "NotADivisor",
            Error::NotInSubfield => "NotInSubfield",
            Error::ZeroForm => "ZeroForm",
            Error::NotProperTower => "NotProperTower",
            Error::AllZeroSeed => "AllZeroSeed",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NoZeroRun => "NoZeroRun",
            Error::BadFactorization { .. } => "BadFactorization",
            Error::NotSubfieldRegime => "NotSubfieldRegime",
            Error::OddCharacteristic => "OddCharacteristic",
            Error::OutOfBounds => "OutOfBounds",
            Error::WrongSize { .. } => "WrongSize",
            Error::EmptyPattern => "EmptyPattern",
            Error::DependentPattern => "DependentPattern",
            Error::DimensionExceeded { .. } => "DimensionExceeded",
            Error::NoValidShift => "NoValidShift",
            Error::NotABasis => "NotABasis",
            Error::AllZeroPattern => "AllZeroPattern",
            Error::NotCoprime => "NotCoprime",
            Error::BadProduct => "BadProduct",
            Error::ColumnMismatch { .. } => "ColumnMismatch",
            Error::Parse(_) => "Parse",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrimeP(p) => write!(f, "NonPrimeP: characteristic {p} is not prime"),
            Error::BadModulus => write!(f, "BadModulus: modulus must be monic of degree n"),
            Error::NotIrreducible => write!(f, "NotIrreducible: modulus is reducible over GF(p)"),
            Error::NotPrimitive => write!(f, "NotPrimitive: root of the modulus does not generate GF(p^n)^x"),
            Error::FieldTooLarge => write!(f, "FieldTooLarge: p^n exceeds the supported range"),
            Error::MalformedElement => {
                write!(f, "MalformedElement: coefficient vector has wrong length or digits >= p")
            }
            Error::DivisionByZero => write!(f, "DivisionByZero: zero has no inverse"),
            Error::LogOfZero => write!(f, "LogOfZero: zero has no discrete logarithm"),
            Error::NotADivisor { divisor, of } => write!(f, "NotADivisor: {divisor} does not divide {of}"),
            Error::NotInSubfield => write!(f, "NotInSubfield: element is not fixed by the subfield Frobenius"),
            Error::ZeroForm => write!(f, "ZeroForm: linear form must be nonzero"),
            Error::NotProperTower => write!(f, "NotProperTower: symbol field must be a proper subfield"),
            Error::AllZeroSeed => write!(f, "AllZeroSeed: seed window must be nonzero"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "LengthMismatch: expected length {expected}, found {found}")
            }
            Error::NoZeroRun => write!(f, "NoZeroRun: no maximal zero run of length window-1 to extend"),
            Error::BadFactorization { s, t } => {
                write!(f, "BadFactorization: s={s}, t={t} must be coprime with s*t = p^n - 1")
            }
            Error::NotSubfieldRegime => {
                write!(f, "NotSubfieldRegime: need m | n, s = p^m - 1 and gcd(s, t) = 1")
            }
            Error::OddCharacteristic => write!(f, "OddCharacteristic: criterion requires p = 2"),
            Error::OutOfBounds => write!(f, "OutOfBounds: pattern offset outside the grid"),
            Error::WrongSize { expected, found } => {
                write!(f, "WrongSize: pattern must have {expected} cells, found {found}")
            }
            Error::EmptyPattern => write!(f, "EmptyPattern: pattern needs at least one cell"),
            Error::DependentPattern => write!(f, "DependentPattern: pattern elements are linearly dependent"),
            Error::DimensionExceeded { total, n } => {
                write!(f, "DimensionExceeded: combined dimension {total} exceeds n = {n}")
            }
            Error::NoValidShift => write!(f, "NoValidShift: no translate keeps the union disjoint and independent"),
            Error::NotABasis => write!(f, "NotABasis: pattern elements do not form a basis"),
            Error::AllZeroPattern => write!(f, "AllZeroPattern: the all-zero window never occurs"),
            Error::NotCoprime => write!(f, "NotCoprime: dimensions must be pairwise coprime"),
            Error::BadProduct => write!(f, "BadProduct: dimensions must multiply to p^n - 1"),
            Error::ColumnMismatch { column } => {
                write!(f, "ColumnMismatch: column {column} disagrees with its algebraic label")
            }
            Error::Parse(msg) => write!(f, "Parse: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
