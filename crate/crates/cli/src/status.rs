use std::process::ExitCode;

/// Process exit statuses. Usage errors exit with 2 from the argument parser.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A sequence was rejected, or a command failed for another reason.
    Invalid,
    MalformedInput,
    BudgetExhausted,
    TheoremFail,
    /// The solver or a construction produced a witness the engine rejected.
    Internal,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Invalid => 1,
            Status::MalformedInput => 3,
            Status::BudgetExhausted => 4,
            Status::TheoremFail => 5,
            Status::Internal => 6,
        }
    }

    fn severity(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Invalid => 1,
            Status::MalformedInput => 2,
            Status::BudgetExhausted => 3,
            Status::TheoremFail => 4,
            Status::Internal => 5,
        }
    }

    /// The more severe of two statuses.
    pub fn max(self, other: Status) -> Status {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s.code())
    }
}
