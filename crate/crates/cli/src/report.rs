use std::io::Write;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::{json, Map, Value};
use vcdlab::Error;

use crate::{Command, Format, RunConfig};

pub const EXIT_PARSE: u8 = 1;
pub const EXIT_CAP: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;

/// A finished computation: JSON fields, optional CSV rows, and the first
/// cross-check that disagreed (which turns the exit status into 3).
pub struct Report {
    fields: Map<String, Value>,
    csv: Option<String>,
    violation: Option<String>,
}

impl Report {
    pub fn new() -> Self {
        Report {
            fields: Map::new(),
            csv: None,
            violation: None,
        }
    }

    pub fn set(mut self, key: &str, v: impl Serialize) -> Self {
        self.fields.insert(
            key.into(),
            serde_json::to_value(v).expect("report values serialize"),
        );
        self
    }

    /// Merges the top-level fields of a serializable struct.
    pub fn merge(mut self, v: impl Serialize) -> Self {
        if let Value::Object(m) = serde_json::to_value(v).expect("report values serialize") {
            self.fields.extend(m);
        }
        self
    }

    pub fn csv_rows<R: Serialize>(mut self, rows: &[R]) -> Self {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in rows {
            w.serialize(r).expect("csv rows serialize");
        }
        self.csv =
            Some(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8"));
        self
    }

    /// Records `what` as violated unless `ok`.
    pub fn check(mut self, ok: bool, what: &str) -> Self {
        if !ok && self.violation.is_none() {
            self.violation = Some(what.into());
        }
        self
    }

    pub fn emit(mut self, command: &str, cfg: &RunConfig) -> ExitCode {
        self.fields.insert(
            "run".into(),
            json!({
                "command": command,
                "caps": { "elements": cfg.cap_elements, "subsets": cfg.cap_subsets, "r": cfg.cap_r },
                "seed": cfg.seed,
            }),
        );
        let text = match cfg.format {
            Format::Json => {
                serde_json::to_string(&Value::Object(self.fields)).expect("json") + "\n"
            }
            Format::Csv => match self.csv {
                Some(c) => c,
                None => return Failure::Parse(format!("`{command}` has no CSV output")).exit(),
            },
        };
        let written = match &cfg.output {
            Some(path) => std::fs::write(path, text.as_bytes()),
            None => std::io::stdout().write_all(text.as_bytes()),
        };
        if let Err(e) = written {
            eprintln!("error: writing report: {e}");
            return ExitCode::from(EXIT_PARSE);
        }
        match self.violation {
            Some(v) => {
                eprintln!("error: cross-check failed: {v}");
                ExitCode::from(EXIT_INVARIANT)
            }
            None => ExitCode::SUCCESS,
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Parse(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    pub fn exit(self) -> ExitCode {
        let code = match &self {
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Lib(Error::CapExceeded { .. }) => EXIT_CAP,
            Failure::Lib(Error::Invariant(_) | Error::IsoFailure(_)) => EXIT_INVARIANT,
            Failure::Lib(_) => EXIT_PARSE,
        };
        match self {
            Failure::Parse(m) => eprintln!("error: {m}"),
            Failure::Lib(e) => eprintln!("error: {e}"),
        }
        ExitCode::from(code)
    }
}

pub fn command_name(c: &Command) -> String {
    use crate::group_cmd::GroupCmd;
    use crate::lattice_cmd::LatticeCmd;
    match c {
        Command::Lattice(LatticeCmd::Stats(_)) => "lattice stats",
        Command::Lattice(LatticeCmd::Birkhoff(_)) => "lattice birkhoff",
        Command::Group(GroupCmd::PpLattice(_)) => "group pp-lattice",
        Command::Group(GroupCmd::Breadth(_)) => "group breadth",
        Command::Group(GroupCmd::Chains(_)) => "group chains",
        Command::Group(GroupCmd::Stabilize(_)) => "group stabilize",
        Command::Dfun(_) => "dfun",
        Command::Classify(_) => "classify",
        Command::Typecount(_) => "typecount",
        Command::Witness(_) => "witness",
        Command::Sidon(_) => "sidon",
        Command::Nsets(_) => "nsets",
    }
    .to_string()
}
