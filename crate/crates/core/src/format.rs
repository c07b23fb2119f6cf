//! Plain-text instance files.
//!
//! ```text
//! labelcut 1
//! <n> <m> <q> <s> <t> <directed:0|1>
//! <u> <v> <label>        (m lines)
//! ```
//!
//! Ids are zero-based decimals separated by single spaces; every line ends
//! in `\n`. Lines starting with `#` are comments and are skipped when
//! reading. [`emit`] never writes comments.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Edge, Instance};

pub const MAGIC: &str = "labelcut";
pub const VERSION: &str = "1";

pub fn emit(instance: &Instance) -> String {
    let mut out = String::with_capacity(32 + 16 * instance.edge_count());
    writeln!(out, "{MAGIC} {VERSION}").unwrap();
    writeln!(
        out,
        "{} {} {} {} {} {}",
        instance.vertex_count(),
        instance.edge_count(),
        instance.label_count(),
        instance.source(),
        instance.sink(),
        u8::from(instance.is_directed())
    )
    .unwrap();
    for e in instance.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.label).unwrap();
    }
    out
}

fn fields<const N: usize>(line_no: usize, line: &str) -> Result<[usize; N]> {
    let mut out = [0usize; N];
    let mut parts = line.split(' ');
    for (i, slot) in out.iter_mut().enumerate() {
        let tok = parts
            .next()
            .ok_or_else(|| Error::parse(line_no, format!("expected {N} fields, found {i}")))?;
        *slot = tok
            .parse()
            .map_err(|_| Error::parse(line_no, format!("`{tok}` is not a decimal id")))?;
    }
    if parts.next().is_some() {
        return Err(Error::parse(line_no, format!("expected {N} fields, found more")));
    }
    Ok(out)
}

pub fn parse(text: &str) -> Result<Instance> {
    let mut lines = text
        .split_terminator('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.starts_with('#'));

    let (no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty file"))?;
    let mut head = header.split(' ');
    if head.next() != Some(MAGIC) {
        return Err(Error::parse(no, format!("expected `{MAGIC} {VERSION}` header")));
    }
    match head.next() {
        Some(VERSION) if head.next().is_none() => {}
        found => {
            return Err(Error::Version {
                found: found.unwrap_or("").to_string(),
                expected: VERSION.to_string(),
            })
        }
    }

    let (no, sizes) = lines
        .next()
        .ok_or_else(|| Error::parse(no + 1, "missing size line"))?;
    let [n, m, q, s, t, directed] = fields::<6>(no, sizes)?;
    if directed > 1 {
        return Err(Error::parse(no, "directed flag must be 0 or 1"));
    }

    let mut edges = Vec::with_capacity(m);
    let mut last = no;
    for (no, line) in lines {
        last = no;
        if edges.len() == m {
            return Err(Error::parse(no, format!("more than the declared {m} edges")));
        }
        let [u, v, label] = fields::<3>(no, line)?;
        if u >= n || v >= n {
            return Err(Error::parse(no, format!("vertex id out of range (n = {n})")));
        }
        if label >= q {
            return Err(Error::parse(no, format!("label {label} out of range (q = {q})")));
        }
        edges.push(Edge::new(u, v, label));
    }
    if edges.len() != m {
        return Err(Error::parse(
            last + 1,
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    Instance::new(n, edges, s, t, q, directed == 1).map_err(|e| Error::parse(no, e.to_string()))
}

pub fn read(path: impl AsRef<Path>) -> Result<Instance> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write(path: impl AsRef<Path>, instance: &Instance) -> Result<()> {
    std::fs::write(path, emit(instance))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_bytes() {
        let g = Instance::new(3, vec![Edge::new(0, 2, 0), Edge::new(2, 1, 1)], 0, 1, 2, true)
            .unwrap();
        assert_eq!(emit(&g), "labelcut 1\n3 2 2 0 1 1\n0 2 0\n2 1 1\n");
    }

    #[test]
    fn comments_are_skipped() {
        let text = "# hello\nlabelcut 1\n# sizes\n2 1 1 0 1 0\n#edge\n0 1 0\n";
        let g = parse(text).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn label_out_of_range_names_line() {
        let err = parse("labelcut 1\n2 1 1 0 1 0\n0 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn version_mismatch() {
        let err = parse("labelcut 2\n2 1 1 0 1 0\n0 1 0\n").unwrap_err();
        assert!(matches!(err, Error::Version { .. }), "{err}");
    }

    #[test]
    fn malformed_lines() {
        for bad in [
            "",
            "graph 1\n",
            "labelcut 1\n2 1 1 0 1\n",
            "labelcut 1\n2 1 1 0 1 0\n0  1 0\n",
            "labelcut 1\n2 1 1 0 1 0\n0 1 0 \n",
            "labelcut 1\n2 2 1 0 1 0\n0 1 0\n",
            "labelcut 1\n2 1 1 0 1 0\n0 1 0\n1 0 0\n",
            "labelcut 1\n2 1 1 0 0 0\n0 1 0\n",
            "labelcut 1\n2 1 1 0 1 2\n0 1 0\n",
        ] {
            assert!(parse(bad).is_err(), "accepted {bad:?}");
        }
    }
}
