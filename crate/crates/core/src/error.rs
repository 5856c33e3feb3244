use thiserror::Error;

/// Errors produced while building, parsing, or analysing automata.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("radix must be at least 2, got {k}")]
    BadRadix { k: usize },

    #[error("automaton has no states")]
    NoStates,

    #[error("{}missing transition for state `{state}` on digit {digit}", at(*.line))]
    MissingTransition {
        state: String,
        digit: usize,
        line: Option<usize>,
    },

    #[error("{}duplicate transition for state `{state}` on digit {digit}", at(*.line))]
    DuplicateTransition {
        state: String,
        digit: usize,
        line: Option<usize>,
    },

    #[error("{}unknown state `{state}`", at(*.line))]
    UnknownState { state: String, line: Option<usize> },

    #[error("{}state `{state}` declared twice", at(*.line))]
    DuplicateState { state: String, line: Option<usize> },

    #[error("{}invalid token `{token}`", at(*.line))]
    InvalidToken { token: String, line: Option<usize> },

    #[error("{}outputs given for some states but not for `{state}`", at(*.line))]
    MissingOutput { state: String, line: Option<usize> },

    #[error("{}digit {digit} out of range for radix {k}", at(*.line))]
    DigitOutOfRange {
        digit: usize,
        k: usize,
        line: Option<usize>,
    },

    #[error("radix mismatch: {left} vs {right}")]
    RadixMismatch { left: usize, right: usize },

    #[error("instance too large to enumerate: {what}")]
    InstanceTooLarge { what: String },

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpusName(String),

    #[error("corpus entry `{0}` has no independent recurrence")]
    NoRecurrence(String),

    #[error("word of length {0} exceeds the supported maximum")]
    WordTooLong(usize),
}

fn at(line: Option<usize>) -> String {
    match line {
        Some(line) => format!("line {line}: "),
        None => String::new(),
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
