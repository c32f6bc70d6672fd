use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Deserializer, Serialize};

use crate::{Command, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    Lemma,
    StructureConstants,
    Families,
    All,
}

/// Options shared by every subcommand. The same struct is read from the
/// `--config` file, whose fields use snake_case names.
#[derive(Clone, Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Built-in group (`cyclic 2`, `S3`, `dihedral 4`) or a JSON group file.
    #[arg(long, global = true)]
    pub group: Option<String>,

    /// Family: `left-regular`, `example1:m1,m2,…`, inline JSON or a JSON file.
    #[arg(long, global = true)]
    #[serde(default, deserialize_with = "string_or_json")]
    pub family: Option<String>,

    #[arg(long, global = true)]
    pub q: Option<usize>,

    /// Comma-separated q values.
    #[arg(long, global = true, value_delimiter = ',')]
    pub q_grid: Option<Vec<usize>>,

    /// Quantity such as `natural:0/2,0/2`; repeat the flag for several.
    #[arg(long, global = true)]
    pub quantity: Option<Vec<String>>,

    /// Σ-tensor such as `0:2,1;1:1`; repeat the flag for several.
    #[arg(long, global = true)]
    pub tensor: Option<Vec<String>>,

    /// Comma-separated statistics: `r3:0`, `p4:1`, `chi2`, `chi2:0`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub stats: Option<Vec<String>>,

    #[arg(long, global = true)]
    pub n_samples: Option<usize>,

    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Summary JSON of `sample`; defaults to `<out>.summary.json`.
    #[arg(long, global = true)]
    pub summary: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Rayon worker threads.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Largest wreath product |G|^q·q! the brute-force oracle may enumerate.
    #[arg(long, global = true)]
    pub bound: Option<u64>,

    #[arg(long, global = true, value_enum)]
    pub scope: Option<Scope>,

    /// Largest total size of the checked Σ-tensors or products.
    #[arg(long, global = true)]
    pub max_total: Option<usize>,

    /// Highest moment or cumulant order printed by `diagram`.
    #[arg(long, global = true)]
    pub order: Option<usize>,

    /// Override the predicted limit in `limits`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub limit: Option<f64>,

    /// Subcommand name, in config files only.
    #[arg(skip)]
    pub command: Option<String>,

    /// Partition literal for `diagram`, in config files only.
    #[arg(skip)]
    pub partition: Option<String>,

    #[arg(skip)]
    pub schema_version: Option<u32>,
}

fn string_or_json<'de, D: Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
    Ok(match Option::<serde_json::Value>::deserialize(d)? {
        None => None,
        Some(serde_json::Value::String(s)) => Some(s),
        Some(v) => Some(v.to_string()),
    })
}

macro_rules! overlay {
    ($cli:expr, $file:expr, $($field:ident),*) => {
        Options { $($field: $cli.$field.or($file.$field),)* }
    };
}

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    options: Options,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let options: Options = serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("invalid config {}: {e}", path.display())))?;
        if let Some(v) = options.schema_version {
            if v != wreathkit::asymptotics::report::SCHEMA_VERSION {
                return Err(Failure::Usage(format!("config schema_version {v} is not supported")));
            }
        }
        Ok(Self { options })
    }

    /// Command-line values win over the file; the command may come from either.
    pub fn merge(self, command: Option<Command>, cli: Options) -> Result<(Command, Options), Failure> {
        let file = self.options;
        let command = match command {
            Some(Command::Diagram { partition }) => Command::Diagram { partition: partition.or(file.partition.clone()) },
            Some(c) => c,
            None => match file.command.as_deref() {
                Some(name) => command_by_name(name, file.partition.clone())?,
                None => return Err(Failure::Usage("no subcommand given (see --help)".into())),
            },
        };
        let merged = overlay!(
            cli, file, group, family, q, q_grid, quantity, tensor, stats, n_samples, seed, out, summary, format,
            workers, bound, scope, max_total, order, limit, command, partition, schema_version
        );
        Ok((command, merged))
    }
}

fn command_by_name(name: &str, partition: Option<String>) -> Result<Command, Failure> {
    Ok(match name {
        "diagram" => Command::Diagram { partition },
        "group" => Command::Group,
        "family" => Command::Family,
        "moments" => Command::Moments,
        "cumulants" => Command::Cumulants,
        "limits" => Command::Limits,
        "sample" => Command::Sample,
        "verify" => Command::Verify,
        "report" => Command::Report,
        other => return Err(Failure::Usage(format!("unknown command `{other}` in config"))),
    })
}
