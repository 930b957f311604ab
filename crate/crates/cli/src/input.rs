use std::path::PathBuf;

use clap::Args;

use gent_core::graph::{generate, line_graph, parse_dimacs, Family};
use gent_core::{Distribution, Error, Graph};

#[derive(Args)]
pub struct GraphArgs {
    /// DIMACS graph file.
    #[arg(required_unless_present = "gen", conflicts_with = "gen")]
    pub graph: Option<PathBuf>,
    /// Built-in family and its parameters, e.g. `--gen kneser 5 2`.
    #[arg(long, num_args = 1.., value_name = "FAMILY PARAMS")]
    pub gen: Option<Vec<String>>,
    /// Use the line graph of the input.
    #[arg(long, alias = "line-of")]
    pub line_graph: bool,
}

pub struct LoadedGraph {
    pub graph: Graph,
    pub source: String,
    pub line_graph: bool,
}

impl GraphArgs {
    /// The input graph, replaced by its line graph when requested.
    pub fn load(&self) -> Result<LoadedGraph, Error> {
        let mut loaded = self.load_base()?;
        if self.line_graph {
            loaded.graph = line_graph(&loaded.graph)?.graph;
            loaded.line_graph = true;
        }
        Ok(loaded)
    }

    /// The input graph as given.
    pub fn load_base(&self) -> Result<LoadedGraph, Error> {
        let (graph, source) = match (&self.graph, &self.gen) {
            (_, Some(spec)) => {
                let family: Family = spec.join(" ").parse()?;
                (generate(&family)?, family.to_string())
            }
            (Some(path), None) => {
                let text = read(&path.display().to_string())?;
                (parse_dimacs(&text)?, path.display().to_string())
            }
            (None, None) => return Err(Error::InvalidParameter("no graph given".into())),
        };
        Ok(LoadedGraph {
            graph,
            source,
            line_graph: false,
        })
    }
}

/// `uniform`, or a JSON file holding an array of probabilities.
pub fn load_distribution(arg: &str, n: usize) -> Result<Distribution, Error> {
    let p = if arg == "uniform" {
        Distribution::uniform(n)?
    } else {
        let text = read(arg)?;
        serde_json::from_str(&text)?
    };
    p.check_len(n)?;
    Ok(p)
}

/// Reads a file, naming it in the error.
pub fn read(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{path}: {e}"))))
}
