use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use oddthick::generate::GraphSpec;
use oddthick::{parse_graph, Format, Graph};

/// Exactly one graph source.
#[derive(Debug, Args, Clone, Default)]
pub struct GraphInput {
    /// graph6 string, or a file holding one
    #[arg(long, value_name = "G6")]
    pub graph6: Option<String>,
    /// Edge-list file ("u v" per line, optional "n=<k>" header)
    #[arg(long, value_name = "PATH")]
    pub edgelist: Option<PathBuf>,
    /// DIMACS file ("p edge n m", 1-based "e u v")
    #[arg(long, value_name = "PATH")]
    pub dimacs: Option<PathBuf>,
    /// Graph file; format from the extension (.g6, .col/.dimacs, else edge list)
    #[arg(long, value_name = "PATH")]
    pub graph: Option<PathBuf>,
    /// Generator expression such as "join(cycle(5),complete(6))"
    #[arg(long, value_name = "SPEC")]
    pub family: Option<String>,
}

impl GraphInput {
    pub fn load(&self) -> Result<Graph> {
        let given = [
            self.graph6.is_some(),
            self.edgelist.is_some(),
            self.dimacs.is_some(),
            self.graph.is_some(),
            self.family.is_some(),
        ];
        match given.iter().filter(|&&b| b).count() {
            0 => bail!("no graph given (use --graph6, --edgelist, --dimacs, --graph or --family)"),
            1 => {}
            _ => bail!("give exactly one graph source"),
        }
        if let Some(s) = &self.graph6 {
            let text = if Path::new(s).is_file() { read(Path::new(s))? } else { s.clone() };
            return parse(&text, Format::Graph6, s);
        }
        if let Some(p) = &self.edgelist {
            return parse(&read(p)?, Format::EdgeList, &p.display().to_string());
        }
        if let Some(p) = &self.dimacs {
            return parse(&read(p)?, Format::Dimacs, &p.display().to_string());
        }
        if let Some(p) = &self.graph {
            let format = match p.extension().and_then(|e| e.to_str()) {
                Some("g6") | Some("graph6") => Format::Graph6,
                Some("col") | Some("dimacs") => Format::Dimacs,
                _ => Format::EdgeList,
            };
            return parse(&read(p)?, format, &p.display().to_string());
        }
        let spec: GraphSpec = self.family.as_deref().unwrap().parse()?;
        Ok(spec.build()?)
    }
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

fn parse(text: &str, format: Format, origin: &str) -> Result<Graph> {
    parse_graph(text, format).with_context(|| format!("parsing {origin}"))
}

/// Non-empty, non-comment lines of a graph6 corpus, parsed. Lines that fail
/// to parse are counted and skipped.
pub fn read_corpus(path: &Path) -> Result<(Vec<Graph>, usize)> {
    let text = read(path)?;
    let mut graphs = Vec::new();
    let mut skipped = 0;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match parse_graph(line, Format::Graph6) {
            Ok(g) => graphs.push(g),
            Err(e) => {
                log::warn!("{}:{}: {e}", path.display(), i + 1);
                skipped += 1;
            }
        }
    }
    Ok((graphs, skipped))
}
