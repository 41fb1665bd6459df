use thiserror::Error;

use crate::partition::{Point, Row};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("point {0} is not covered by any block")]
    MissingPoint(Point),
    #[error("point {0} appears in more than one block")]
    DuplicatePoint(Point),
    #[error("point {0} is out of range for its row")]
    IndexOutOfRange(Point),
    #[error("not composable at middle position {position}: {detail}")]
    NotComposable { position: usize, detail: String },
    #[error("cannot rotate: the {0:?} row is empty")]
    EmptyRow(Row),
    #[error("unknown point {0}")]
    UnknownPoint(Point),
    #[error("unknown block index {0}")]
    UnknownBlock(usize),
    #[error("partition is not a pair partition with neutral blocks")]
    NotP2nb,
    #[error("partition is not in S_0")]
    NotS0,
    #[error("interval is not a sector of the partition")]
    NotASector,
    #[error("partition is not a bracket")]
    NotABracket,
    #[error("argument is not a projective pair partition with neutral blocks")]
    NotProjective,
    #[error("bracket is not dualizable")]
    NotDualizable,
    #[error("bracket pattern must be non-empty")]
    EmptyPattern,
    #[error("bracket pattern elements must lie in 1..=63, got {0}")]
    PatternElementOutOfRange(u64),
    #[error("{0} is not an element of the pattern")]
    ProjectionNotInPattern(u32),
    #[error("pattern set is not closed: {0}")]
    NotClosed(String),
    #[error("partition has {points} points, above the bound {bound}")]
    TooLarge { points: usize, bound: usize },
    #[error("frame bound {frame_bound} needs max_points >= {needed}")]
    BoundTooSmall { frame_bound: u32, needed: usize },
    #[error("closure generators must be pair partitions")]
    NotPairPartition,
    #[error("invalid closure configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("invalid suite parameter: {0}")]
    InvalidParam(String),
}

pub type Result<T> = std::result::Result<T, Error>;
