use curvemix::Error;

pub const USAGE: u8 = 2;
pub const EMPTY: u8 = 3;
pub const TOO_LARGE: u8 = 4;
pub const CHECK_FAILED: u8 = 5;
pub const REDUCIBLE: u8 = 6;

/// A failed command: an exit code, a message for stderr and, for checks
/// that ran to completion, the report to print anyway.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    pub output: Option<String>,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into(), output: None }
    }

    pub fn with_output(mut self, output: String) -> Self {
        self.output = Some(output);
        self
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::EmptyStateSpace => EMPTY,
        Error::StateSpaceTooLarge { .. } => TOO_LARGE,
        Error::Reducible(_) | Error::PeriodicChain(_) => REDUCIBLE,
        Error::ReconstructionMismatch { .. }
        | Error::NotIsomorphic { .. }
        | Error::ConditionFailed { .. }
        | Error::NegativeEigenvalue(_)
        | Error::NegativeLazySpectrum(_)
        | Error::InconsistentVerdict(_)
        | Error::BoundViolated(_)
        | Error::HorizonExceeded(_)
        | Error::NoConvergence { .. } => CHECK_FAILED,
        _ => USAGE,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(exit_code(&e), e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(USAGE, e.to_string())
    }
}
