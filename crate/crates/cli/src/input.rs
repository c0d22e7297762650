//! Reading structures from files or standard input.

use std::io::Read;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use split_species::bijections::PointedSet;
use split_species::split::ColoredSplitGraph;
use split_species::{Error, Graph, VertexSet};

/// Output of `uk-decompose`, input of `uk-compose`.
#[derive(Serialize, Deserialize)]
pub struct UkPair {
    #[serde(rename = "A")]
    pub a: VertexSet,
    pub rest: ColoredSplitGraph,
}

/// Output of `amb-decompose`, input of `amb-compose`.
#[derive(Serialize, Deserialize)]
pub struct AmbPair {
    pub a: usize,
    pub rest: Graph,
}

/// Output of `cuk-decompose`, input of `cuk-compose`.
#[derive(Serialize, Deserialize)]
pub struct CukPair {
    pub pointed: PointedSet,
    pub rest: ColoredSplitGraph,
}

fn read_text(path: &Path) -> Result<String, Error> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(text)
}

pub fn read_input<T: DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
}

/// A graph as JSON (`{"n", "edges"}`) or as a text edge list.
pub fn read_graph(path: &Path) -> Result<Graph, Error> {
    let text = read_text(path)?;
    if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
    } else {
        Graph::parse_text(&text)
    }
}
