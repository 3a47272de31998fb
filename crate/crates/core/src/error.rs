use thiserror::Error;

use crate::arc::Window;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("({m},{n}) is not an arc: n-m < 2")]
    NotAnArc { m: i64, n: i64 },

    #[error("malformed arc {0:?}, expected \"(m,n)\"")]
    BadArcSyntax(String),

    #[error("malformed window {0:?}, expected \"LO..HI\"")]
    BadWindowSyntax(String),

    #[error("inverted window {lo}..{hi}")]
    InvertedWindow { lo: i64, hi: i64 },

    #[error("region is infinite; exact mode needs a finite set of arcs")]
    NotFinite,

    #[error("not precovering: right fountain {fountain} is not a left fountain")]
    NotPrecovering { fountain: i64 },

    #[error("not preenveloping: left fountain {fountain} is not a right fountain")]
    NotPreenveloping { fountain: i64 },

    #[error("margin {given} is below the sound bound {required} for window {window}")]
    MarginTooSmall { given: i64, required: i64, window: Window },

    #[error("window {window} is too wide for ascii rendering (at most {max} integers)")]
    WindowTooWide { window: Window, max: i64 },

    #[error("internal theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    /// Errors that can only come from a bug in the engine, never from input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::TheoremViolation(_))
    }
}
