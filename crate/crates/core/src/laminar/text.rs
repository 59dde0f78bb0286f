use std::fmt::Write as _;

use super::{LaminarTree, NONE};
use crate::error::{Error, Result};

impl LaminarTree {
    /// One line per node: `id parent_id cut_value v1,v2,...`; the root's parent
    /// is -1, unknown cuts print as `?` and empty vertex lists as `-`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for x in 0..self.node_count() {
            let p = if x == 0 { -1 } else { self.parents()[x] as i64 };
            let cut = self.cut(x as u32).map_or("?".to_string(), |c| c.to_string());
            let verts = if self.assoc(x as u32).is_empty() {
                "-".to_string()
            } else {
                self.assoc(x as u32).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            };
            let _ = writeln!(s, "{x} {p} {cut} {verts}");
        }
        s
    }

    /// Parses the format written by [`LaminarTree::to_text`]; lines starting
    /// with `#` are skipped.
    pub fn from_text(text: &str, n: usize) -> Result<LaminarTree> {
        let mut parent = Vec::new();
        let mut cut = Vec::new();
        let mut home = vec![NONE; n];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: i + 1, msg: msg.to_string() };
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 {
                return Err(err("expected `id parent cut vertices`"));
            }
            let id: usize = f[0].parse().map_err(|_| err("bad id"))?;
            if id != parent.len() {
                return Err(err("ids must be consecutive from 0"));
            }
            let p: i64 = f[1].parse().map_err(|_| err("bad parent"))?;
            if (id == 0) != (p == -1) || p >= id as i64 {
                return Err(err("parent must precede the node; only node 0 has parent -1"));
            }
            parent.push(if p < 0 { NONE } else { p as u32 });
            cut.push(if f[2] == "?" { None } else { Some(f[2].parse().map_err(|_| err("bad cut"))?) });
            if f[3] != "-" {
                for v in f[3].split(',') {
                    let v: usize = v.parse().map_err(|_| err("bad vertex"))?;
                    if v >= n || home[v] != NONE {
                        return Err(err("vertex out of range or repeated"));
                    }
                    home[v] = id as u32;
                }
            }
        }
        if home.contains(&NONE) {
            return Err(Error::MalformedTree("some vertex has no node".into()));
        }
        LaminarTree::from_parts(n, parent, home, Some(cut))
    }
}
