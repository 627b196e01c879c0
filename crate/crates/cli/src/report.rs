use std::fmt;

use dcf_core::Error;

/// `key: value` header, a blank line, then the payload.
#[derive(Debug, Default)]
pub struct Report {
    header: Vec<(String, String)>,
    payload: Vec<String>,
    negative: bool,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Report {
        let mut r = Report::default();
        r.field("command", command);
        r.field("seed", seed);
        r
    }

    pub fn field(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.header.push((key.to_string(), value.to_string()));
        self
    }

    pub fn line(&mut self, line: impl Into<String>) -> &mut Self {
        self.payload.push(line.into());
        self
    }

    pub fn negative(&mut self) -> &mut Self {
        self.negative = true;
        self
    }

    pub fn exit_code(&self) -> u8 {
        if self.negative {
            3
        } else {
            0
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.header {
            writeln!(f, "{}: {}", k, v)?;
        }
        writeln!(f)?;
        for l in &self.payload {
            writeln!(f, "{}", l)?;
        }
        Ok(())
    }
}

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// 3 for mathematical "no", 2 for malformed input, 1 for everything else.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        e if e.is_negative_answer() => 3,
        Error::Parse { .. }
        | Error::Invalid(_)
        | Error::ForeignVariable(_)
        | Error::FieldMismatch(..)
        | Error::NotSolvedForm(_)
        | Error::UnitIdeal(_) => 2,
        _ => 1,
    }
}
