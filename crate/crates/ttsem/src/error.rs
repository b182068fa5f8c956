use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a rational number: {0:?}")]
    BadRational(String),
    #[error("breakpoint abscissae must be strictly increasing with at least two points")]
    BadBreakpoints,
    #[error("piecewise-linear values must be all finite or all +inf")]
    MixedInfiniteValues,
    #[error("point {0} outside the function domain")]
    OutsideDomain(String),
    #[error("operands have different domains")]
    DomainMismatch,
    #[error("operands have different windows")]
    WindowMismatch,
    #[error("operands have different clocks")]
    ClockMismatch,
    #[error("window length must be positive")]
    EmptyWindow,
    #[error("half-plane radius must be non-negative")]
    NegativeRadius,
    #[error("interval endpoints must satisfy d <= u")]
    ImproperInterval,
    #[error("function takes negative values")]
    NegativeValue,
    #[error("invalid Dyck path: {0}")]
    InvalidDyckPath(&'static str),
    #[error("invalid subwindow: need 0 <= a < b <= l")]
    InvalidSubwindow,
    #[error("invalid restriction: need r, s >= 0 and r + s < l")]
    InvalidRestriction,
    #[error("value is infinite where a finite one is required")]
    InfiniteValue,
    #[error("arithmetic on opposite infinities")]
    InfiniteArithmetic,
    #[error("reciprocal requires a positive interval")]
    NonPositiveInterval,
    #[error("time {0} outside the open window")]
    OutsideOpenWindow(String),
    #[error("instant {0} is a transition or boundary instant")]
    AtTransition(String),
    #[error("walk is inconsistent with the graph: {0}")]
    BadWalk(String),
    #[error("gluing failed: walks disagree on the overlap at {0}")]
    GlueMismatch(String),
    #[error("invalid signal components")]
    BadSignal,
    #[error("scenario is missing {0:?}")]
    MissingTrace(String),
    #[error("formula error at node {node:?}: {msg}")]
    Formula { node: String, msg: String },
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn formula(node: &str, msg: impl Into<String>) -> Self {
        Error::Formula {
            node: node.to_string(),
            msg: msg.into(),
        }
    }
}
