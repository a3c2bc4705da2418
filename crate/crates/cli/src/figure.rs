//! Figure configuration files for `plot --config`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use pbconic::pipeline::PipelineError;
use serde::Deserialize;

use crate::{AxisArg, Common};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Figure {
    pub title: String,
    /// System file, relative to the configuration file.
    pub system: PathBuf,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    #[serde(default)]
    pub axis: Option<String>,
    #[serde(default)]
    pub offset: Option<String>,
    #[serde(default)]
    pub a0: Vec<String>,
    #[serde(default)]
    pub cycles: Vec<f64>,
    #[serde(default)]
    pub window: Option<[f64; 4]>,
    #[serde(default)]
    pub centered: bool,
}

pub fn load(path: &Path) -> Result<Figure, PipelineError> {
    let text = std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    })?;
    toml::from_str(&text).map_err(|e| PipelineError::Usage(format!("{}: {e}", path.display())))
}

impl Figure {
    /// Command-line arguments equivalent to this figure; output paths come from `base`.
    pub fn into_args(self, path: &Path, base: &Common) -> Common {
        let dir = path.parent().unwrap_or(Path::new("."));
        let mut args = base.clone();
        args.system = Some(dir.join(&self.system));
        args.params = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        args.axis = match self.axis.as_deref() {
            Some("y") => AxisArg::Y,
            _ => AxisArg::X,
        };
        if let Some(o) = self.offset {
            args.offset = o;
        }
        args.a0 = self.a0;
        if !self.cycles.is_empty() {
            args.cycle = self.cycles;
        }
        if let Some([a, b, c, d]) = self.window {
            args.window = Some(format!("{a},{b},{c},{d}"));
        }
        args.centered |= self.centered;
        args
    }
}
