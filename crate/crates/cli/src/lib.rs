//! Session files, command dispatch and canonical reports for `frobsat`.

pub mod command;
pub mod error;
pub mod report;
pub mod session;

pub use command::{run_command, Command, Flags};
pub use error::{CliError, Result};
pub use report::{write_report, Report};
pub use session::{parse_session, Assertion, SessionFile};
