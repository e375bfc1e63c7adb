use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use hamlab::graph::{graph6, Graph};

fn lines(path: Option<&Path>) -> Result<Vec<(usize, String)>> {
    let reader: Box<dyn BufRead> = match path {
        None => Box::new(BufReader::new(io::stdin())),
        Some(p) if p.as_os_str() == "-" => Box::new(BufReader::new(io::stdin())),
        Some(p) => Box::new(BufReader::new(File::open(p).with_context(|| format!("opening {}", p.display()))?)),
    };
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.with_context(|| format!("reading line {}", i + 1))?;
        let t = line.trim();
        if !t.is_empty() {
            out.push((i + 1, t.to_string()));
        }
    }
    Ok(out)
}

/// Non-blank graph6 lines with their 1-based line numbers.
pub fn read_graphs(path: Option<&Path>) -> Result<Vec<(usize, Graph)>> {
    lines(path)?
        .into_iter()
        .map(|(n, l)| Ok((n, graph6::decode(&l).with_context(|| format!("line {n}: malformed graph6 {l:?}"))?)))
        .collect()
}

#[derive(Deserialize)]
struct AdjacencyRecord {
    order: usize,
    adjacency: Vec<Vec<usize>>,
}

fn from_record(r: AdjacencyRecord) -> Result<Graph> {
    if r.adjacency.len() != r.order {
        bail!("order {} but {} adjacency rows", r.order, r.adjacency.len());
    }
    let mut g = Graph::empty(r.order)?;
    for (u, row) in r.adjacency.iter().enumerate() {
        for &v in row {
            if v >= r.order || v == u {
                bail!("bad neighbour {v} of vertex {u}");
            }
            if !r.adjacency[v].contains(&u) {
                bail!("{u}–{v} is listed only at {u}");
            }
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

/// One `{"order": n, "adjacency": [[...], ...]}` object per non-blank line.
pub fn read_json_graphs(path: Option<&Path>) -> Result<Vec<(usize, Graph)>> {
    lines(path)?
        .into_iter()
        .map(|(n, l)| {
            let rec: AdjacencyRecord = serde_json::from_str(&l).with_context(|| format!("line {n}: malformed JSON"))?;
            Ok((n, from_record(rec).with_context(|| format!("line {n}"))?))
        })
        .collect()
}

/// Secondary output: a file, or stderr.
pub enum Sink {
    File(File),
    Stderr,
}

impl Sink {
    pub fn open(path: Option<&Path>) -> Result<Self> {
        Ok(match path {
            Some(p) => Sink::File(File::create(p).with_context(|| format!("creating {}", p.display()))?),
            None => Sink::Stderr,
        })
    }

    pub fn line(&mut self, text: &str) -> Result<()> {
        match self {
            Sink::File(f) => writeln!(f, "{text}")?,
            Sink::Stderr => eprintln!("{text}"),
        }
        Ok(())
    }
}
