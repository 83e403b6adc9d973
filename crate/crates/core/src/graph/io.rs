use std::collections::HashMap;
use std::io::BufRead;

use super::{Graph, GraphError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Delimiter {
    /// Whitespace or commas, whichever the line uses.
    #[default]
    Auto,
    Whitespace,
    Comma,
}

#[derive(Clone, Debug)]
pub struct ParseOptions {
    pub delimiter: Delimiter,
    /// Lines starting with any of these (after leading whitespace) are skipped.
    pub comment_prefixes: Vec<String>,
    /// Require integer node ids. Numeric ids are remapped in ascending order;
    /// otherwise ids are remapped in order of first appearance.
    pub numeric_ids: bool,
    /// Ignore columns after the first two (weights, timestamps).
    pub allow_extra_columns: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            delimiter: Delimiter::Auto,
            comment_prefixes: vec!["#".into(), "%".into()],
            numeric_ids: true,
            allow_extra_columns: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LoadReport {
    pub graph: Graph,
    pub edge_lines: usize,
    pub duplicates_dropped: usize,
    pub self_loops_dropped: usize,
}

fn tokens<'a>(line: &'a str, delimiter: Delimiter) -> Vec<&'a str> {
    match delimiter {
        Delimiter::Whitespace => line.split_whitespace().collect(),
        Delimiter::Comma => line.split(',').map(str::trim).collect(),
        Delimiter::Auto => line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect(),
    }
}

/// Reads an undirected simple graph from edge-list text.
///
/// Direction is ignored, repeated edges collapse and self-loops are dropped;
/// the returned report counts what was discarded.
pub fn load_edge_list<R: BufRead>(source: R, options: &ParseOptions) -> Result<LoadReport, GraphError> {
    let mut raw: Vec<(String, String)> = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty()
            || options
                .comment_prefixes
                .iter()
                .any(|p| !p.is_empty() && trimmed.starts_with(p.as_str()))
        {
            continue;
        }
        let toks = tokens(trimmed, options.delimiter);
        if toks.len() < 2 || toks[0].is_empty() || toks[1].is_empty() {
            return Err(GraphError::Parse {
                line: lineno,
                message: format!("expected two node ids, found {trimmed:?}"),
            });
        }
        if toks.len() > 2 && !options.allow_extra_columns {
            return Err(GraphError::Parse {
                line: lineno,
                message: format!("expected exactly two columns, found {}", toks.len()),
            });
        }
        if options.numeric_ids {
            for t in &toks[..2] {
                if t.parse::<u64>().is_err() {
                    return Err(GraphError::Parse {
                        line: lineno,
                        message: format!("non-numeric node id {t:?}"),
                    });
                }
            }
        }
        raw.push((toks[0].to_string(), toks[1].to_string()));
    }
    if raw.is_empty() {
        return Err(GraphError::EmptyInput);
    }

    let labels: Vec<String> = if options.numeric_ids {
        let mut ids: Vec<u64> = raw
            .iter()
            .flat_map(|(a, b)| [a.parse::<u64>().unwrap(), b.parse::<u64>().unwrap()])
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids.into_iter().map(|i| i.to_string()).collect()
    } else {
        let mut seen = HashMap::new();
        let mut order = Vec::new();
        for (a, b) in &raw {
            for t in [a, b] {
                if !seen.contains_key(t) {
                    seen.insert(t.clone(), order.len());
                    order.push(t.clone());
                }
            }
        }
        order
    };
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    // numeric labels are canonicalised ("007" -> "7") before lookup
    let lookup = |t: &str| -> usize {
        if options.numeric_ids {
            index[t.parse::<u64>().unwrap().to_string().as_str()]
        } else {
            index[t]
        }
    };
    let edges: Vec<(usize, usize)> = raw.iter().map(|(a, b)| (lookup(a), lookup(b))).collect();
    let edge_lines = edges.len();
    let (graph, report) = Graph::build(labels, edges)?;
    Ok(LoadReport {
        graph,
        edge_lines,
        duplicates_dropped: report.duplicates_dropped,
        self_loops_dropped: report.self_loops_dropped,
    })
}
