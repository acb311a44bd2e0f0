//! Plain-text edge lists: a header line `n m`, then one `u v` line per edge
//! `u → v`. Blank lines and lines starting with `#` are skipped.

use crate::digraph::Digraph;
use crate::CoreError;
use std::io::{BufRead, Write};

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Digraph, CoreError> {
    let mut lines = reader
        .lines()
        .map(|l| l.map_err(|e| CoreError::Io(e.to_string())))
        .filter(|l| match l {
            Ok(s) => !(s.trim().is_empty() || s.trim_start().starts_with('#')),
            Err(_) => true,
        });
    let header = lines
        .next()
        .ok_or_else(|| CoreError::Parse("empty edge list".into()))??;
    let (n, m) = parse_pair(&header)?;
    let mut d = Digraph::new(n);
    let mut seen = 0;
    for line in lines {
        let (u, v) = parse_pair(&line?)?;
        d.add_edge(u, v)?;
        seen += 1;
    }
    if seen != m {
        return Err(CoreError::Parse(format!(
            "header announces {m} edges, found {seen}"
        )));
    }
    Ok(d)
}

pub fn write_edge_list<W: Write>(d: &Digraph, mut out: W) -> Result<(), CoreError> {
    let io = |e: std::io::Error| CoreError::Io(e.to_string());
    writeln!(out, "{} {}", d.n(), d.edge_count()).map_err(io)?;
    for (u, v) in d.edges() {
        writeln!(out, "{u} {v}").map_err(io)?;
    }
    Ok(())
}

fn parse_pair(line: &str) -> Result<(usize, usize), CoreError> {
    let mut it = line.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|_| CoreError::Parse(format!("not a vertex id: {t:?}")))
    });
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a?, b?)),
        _ => Err(CoreError::Parse(format!("expected two integers: {line:?}"))),
    }
}
