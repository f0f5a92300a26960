//! Constructing a generic second row over a given first row, stage by stage.

pub mod lift;
pub mod schedule;

pub use lift::{
    lift, lift_semigeneric, semigeneric_schedule, Checkpoint, LiftOutcome, LiftReport, StageReport, WordGroups,
};
pub use schedule::{LiftingSchedule, ScheduleSummary};
