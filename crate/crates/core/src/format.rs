//! Line-oriented text formats for algebras (`.alg`) and modules (`.mod`).
//!
//! ```text
//! # 1 -> 2 -> 3 with the composite zero
//! algebra A3Z
//! field p=2
//! vertices 1 2 3
//! arrow a 1 2
//! arrow b 2 3
//! relation 1 b*a
//! nilpotency 2
//! ```
//!
//! ```text
//! module P1 over A3Z
//! dim 1=1 2=1 3=0
//! matrix a = [1]
//! ```
//!
//! Paths compose right to left: `b*a` is `a` followed by `b`. A matrix has
//! one row per basis vector at the arrow's target.

use std::sync::Arc;

use crate::algebra::{build_algebra, Algebra, Arrow, QuiverPresentation, Relation};
use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Mat};
use crate::modrep::ModuleRep;

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

/// Non-empty, comment-stripped lines with 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_usize(line: usize, s: &str, what: &str) -> Result<usize> {
    s.parse().or_else(|_| perr(line, format!("expected {what}, found '{s}'")))
}

pub fn parse_presentation(text: &str, default_name: &str) -> Result<QuiverPresentation> {
    let mut name = default_name.to_string();
    let mut p = None;
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relations: Vec<(usize, Vec<(i64, Vec<String>)>)> = Vec::new();
    let mut nilpotency = None;
    let mut last = 0;
    for (ln, l) in lines(text) {
        last = ln;
        let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match key {
            "algebra" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return perr(ln, "expected 'algebra <name>'");
                }
                name = rest.to_string();
            }
            "field" => {
                let Some(v) = rest.strip_prefix("p=") else {
                    return perr(ln, "expected 'field p=<prime>'");
                };
                let q: u32 = v.trim().parse().or_else(|_| perr(ln, format!("bad prime '{v}'")))?;
                if FieldSpec::new(q).is_err() {
                    return perr(ln, format!("{q} is not a supported prime"));
                }
                p = Some(q);
            }
            "vertices" => {
                let vs: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if vs.is_empty() {
                    return perr(ln, "no vertices listed");
                }
                for (i, v) in vs.iter().enumerate() {
                    if vs[..i].contains(v) {
                        return perr(ln, format!("duplicate vertex '{v}'"));
                    }
                }
                vertices = Some(vs);
            }
            "arrow" => {
                let Some(vs) = &vertices else {
                    return perr(ln, "arrow before vertices");
                };
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 {
                    return perr(ln, "expected 'arrow <name> <source> <target>'");
                }
                let find = |s: &str| vs.iter().position(|v| v == s);
                let (Some(source), Some(target)) = (find(parts[1]), find(parts[2])) else {
                    return perr(ln, "arrow endpoint is not a declared vertex");
                };
                if parts[0].contains('*') || arrows.iter().any(|a| a.name == parts[0]) {
                    return perr(ln, format!("bad or duplicate arrow name '{}'", parts[0]));
                }
                arrows.push(Arrow { name: parts[0].to_string(), source, target });
            }
            "relation" => {
                let mut terms = Vec::new();
                for term in rest.split('+') {
                    let parts: Vec<&str> = term.split_whitespace().collect();
                    let (c, path) = match parts.as_slice() {
                        [c, path] => (c.parse::<i64>().or_else(|_| perr(ln, format!("bad coefficient '{c}'")))?, *path),
                        [path] => (1, *path),
                        _ => return perr(ln, "expected 'relation <c> <path> [+ <c> <path> ...]'"),
                    };
                    terms.push((c, path.split('*').map(String::from).collect()));
                }
                relations.push((ln, terms));
            }
            "nilpotency" => nilpotency = Some(parse_usize(ln, rest, "a nilpotency bound")?),
            _ => return perr(ln, format!("unknown directive '{key}'")),
        }
    }
    let Some(p) = p else {
        return perr(last.max(1), "missing 'field p=<prime>'");
    };
    let Some(vertices) = vertices else {
        return perr(last.max(1), "missing 'vertices'");
    };
    let mut rels = Vec::new();
    for (ln, terms) in relations {
        let mut out = Vec::new();
        let mut ends = None;
        for (c, names) in terms {
            let mut path = Vec::new();
            for n in &names {
                match arrows.iter().position(|a| &a.name == n) {
                    Some(i) => path.push(i),
                    None => return perr(ln, format!("unknown arrow '{n}'")),
                }
            }
            if path.len() < 2 {
                return perr(ln, "relation paths must have length at least 2");
            }
            // written order: the last arrow acts first
            for w in path.windows(2) {
                if arrows[w[1]].target != arrows[w[0]].source {
                    return perr(ln, format!("'{}' is not a path", names.join("*")));
                }
            }
            let e = (arrows[*path.last().expect("nonempty")].source, arrows[path[0]].target);
            if ends.is_some_and(|x| x != e) {
                return perr(ln, "relation terms are not parallel paths");
            }
            ends = Some(e);
            out.push((c, path));
        }
        rels.push(Relation { terms: out });
    }
    let nilpotency = match nilpotency {
        Some(l) => l,
        None if is_acyclic(vertices.len(), &arrows) => vertices.len().max(2),
        None => return perr(last.max(1), "missing 'nilpotency' for a quiver with oriented cycles"),
    };
    Ok(QuiverPresentation { name, p, vertices, arrows, relations: rels, nilpotency })
}

fn is_acyclic(n: usize, arrows: &[Arrow]) -> bool {
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.target] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for a in arrows.iter().filter(|a| a.source == v) {
            indeg[a.target] -= 1;
            if indeg[a.target] == 0 {
                stack.push(a.target);
            }
        }
    }
    seen == n
}

pub fn parse_algebra(text: &str, default_name: &str) -> Result<Arc<Algebra>> {
    build_algebra(&parse_presentation(text, default_name)?)
}

pub fn write_presentation(q: &QuiverPresentation) -> String {
    let mut s = format!("algebra {}\nfield p={}\nvertices {}\n", q.name, q.p, q.vertices.join(" "));
    for a in &q.arrows {
        s += &format!("arrow {} {} {}\n", a.name, q.vertices[a.source], q.vertices[a.target]);
    }
    for r in &q.relations {
        let terms: Vec<String> = r
            .terms
            .iter()
            .map(|(c, path)| {
                let names: Vec<&str> = path.iter().map(|&i| q.arrows[i].name.as_str()).collect();
                format!("{} {}", c, names.join("*"))
            })
            .collect();
        s += &format!("relation {}\n", terms.join(" + "));
    }
    s += &format!("nilpotency {}\n", q.nilpotency);
    s
}

fn parse_matrix(ln: usize, text: &str, p: u32) -> Result<Vec<Vec<u32>>> {
    let Some(inner) = text.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')) else {
        return perr(ln, "matrix must be enclosed in [ ]");
    };
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    let mut rows = Vec::new();
    for row in inner.split(';') {
        let mut r = Vec::new();
        for e in row.split_whitespace() {
            let v: i64 = e.parse().or_else(|_| perr(ln, format!("bad matrix entry '{e}'")))?;
            r.push(v.rem_euclid(p as i64) as u32);
        }
        rows.push(r);
    }
    Ok(rows)
}

/// Parses a `.mod` file over `alg`; returns the module and its name.
pub fn parse_module(text: &str, alg: &Arc<Algebra>) -> Result<(String, ModuleRep)> {
    let mut header: Option<String> = None;
    let mut dims: Option<Vec<usize>> = None;
    let mut mats: Vec<Option<(usize, Vec<Vec<u32>>)>> = vec![None; alg.generators().len()];
    let mut last = 0;
    for (ln, l) in lines(text) {
        last = ln;
        let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match key {
            "module" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [name, "over", over] = parts.as_slice() else {
                    return perr(ln, "expected 'module <name> over <algebra>'");
                };
                if *over != alg.name() {
                    return perr(ln, format!("module is over '{over}' but the algebra is '{}'", alg.name()));
                }
                header = Some(name.to_string());
            }
            "dim" => {
                let mut d = vec![0; alg.vertex_count()];
                for item in rest.split_whitespace() {
                    let Some((v, n)) = item.split_once('=') else {
                        return perr(ln, format!("expected <vertex>=<dim>, found '{item}'"));
                    };
                    let Some(i) = alg.vertex_labels().iter().position(|x| x == v) else {
                        return perr(ln, format!("unknown vertex '{v}'"));
                    };
                    d[i] = parse_usize(ln, n, "a dimension")?;
                }
                dims = Some(d);
            }
            "matrix" => {
                let Some(d) = &dims else {
                    return perr(ln, "matrix before dim");
                };
                let Some((name, m)) = rest.split_once('=') else {
                    return perr(ln, "expected 'matrix <arrow> = [...]'");
                };
                let name = name.trim();
                let Some(gi) = alg.generators().iter().position(|&g| alg.labels()[g] == name) else {
                    return perr(ln, format!("unknown arrow '{name}'"));
                };
                let (s, t) = alg.ends(alg.generators()[gi]);
                let rows = parse_matrix(ln, m, alg.p())?;
                let ok = (rows.len() == d[t] || (rows.is_empty() && d[t] * d[s] == 0))
                    && rows.iter().all(|r| r.len() == d[s]);
                if !ok {
                    let cols = rows.first().map_or(0, |r| r.len());
                    return perr(
                        ln,
                        format!("matrix for {name} is {}x{}, expected {}x{}", rows.len(), cols, d[t], d[s]),
                    );
                }
                if mats[gi].is_some() {
                    return perr(ln, format!("second matrix for {name}"));
                }
                mats[gi] = Some((ln, rows));
            }
            _ => return perr(ln, format!("unknown directive '{key}'")),
        }
    }
    let Some(name) = header else {
        return perr(last.max(1), "missing 'module <name> over <algebra>'");
    };
    let Some(dims) = dims else {
        return perr(last.max(1), "missing 'dim'");
    };
    let p = alg.p();
    let blocks: Vec<Mat> = alg
        .generators()
        .iter()
        .zip(&mats)
        .map(|(&g, m)| {
            let (s, t) = alg.ends(g);
            match m {
                Some((_, rows)) if !rows.is_empty() => Mat::from_row_vecs(p, dims[s], rows),
                _ => Mat::zeros(p, dims[t], dims[s]),
            }
        })
        .collect();
    let m = ModuleRep::from_generator_blocks(alg, dims, &blocks)?;
    Ok((name, m))
}

pub fn write_module(m: &ModuleRep, name: &str) -> String {
    let alg = m.algebra();
    let dims: Vec<String> =
        alg.vertex_labels().iter().zip(m.dims()).map(|(v, d)| format!("{v}={d}")).collect();
    let mut s = format!("module {} over {}\ndim {}\n", name, alg.name(), dims.join(" "));
    for &g in alg.generators() {
        let b = m.block(g);
        if b.rows() == 0 || b.cols() == 0 || b.is_zero() {
            continue;
        }
        let rows: Vec<String> =
            (0..b.rows()).map(|r| b.row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
        s += &format!("matrix {} = [{}]\n", alg.labels()[g], rows.join(" ; "));
    }
    s
}
