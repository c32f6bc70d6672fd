use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use num_traits::ToPrimitive;
use serde::Serialize;
use wreathkit::scalar::format_rational;
use wreathkit::Rational;

use crate::Failure;

pub use wreathkit::asymptotics::report::SCHEMA_VERSION;

/// Buffered writer to a file, or to stdout when no path is given.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), Failure> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Writes the rows with a header, even when there are none.
pub fn write_csv<T: Serialize>(path: Option<&Path>, header: &[&str], rows: &[T]) -> Result<(), Failure> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(sink(path)?);
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// A rational as "p/q" together with its float value.
#[derive(Clone, Debug, Serialize)]
pub struct Exact {
    pub exact: String,
    pub value: f64,
}

impl From<&Rational> for Exact {
    fn from(r: &Rational) -> Self {
        Self { exact: format_rational(r), value: to_f64(r) }
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
