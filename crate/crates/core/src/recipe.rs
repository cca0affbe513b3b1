//! A small expression language for composing constructions, e.g.
//! `tensorJ(catalog:LK6,2)` or `complement(cartesian(kpq(3,3),complete(3)))`.
//!
//! ```text
//! expr  := call | "catalog:" key | key
//! call  := ident "(" arg ("," arg)* ")"
//! arg   := expr | integer
//! ```

use std::fmt;

use thiserror::Error;

use crate::families::{ag3q_family, catalog_graph, FamilyError};
use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecipeError {
    #[error("at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("at position {position}: unknown constructor `{name}`")]
    UnknownConstructor { position: usize, name: String },
    #[error("at position {position}: `{name}` expects {expected}")]
    Arity { position: usize, name: String, expected: &'static str },
    #[error("at position {position}: {source}")]
    Graph { position: usize, source: GraphError },
    #[error("at position {position}: {source}")]
    Family { position: usize, source: FamilyError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int { value: u64, position: usize },
    Catalog { key: String, position: usize },
    Call { name: String, args: Vec<Expr>, position: usize },
}

impl Expr {
    pub fn position(&self) -> usize {
        match self {
            Expr::Int { position, .. } | Expr::Catalog { position, .. } | Expr::Call { position, .. } => *position,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int { value, .. } => write!(f, "{value}"),
            Expr::Catalog { key, .. } => write!(f, "catalog:{key}"),
            Expr::Call { name, args, .. } => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn is_key_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'/'
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, RecipeError> {
        Err(RecipeError::Syntax { position: self.pos, message: message.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(is_key_byte) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn expr(&mut self) -> Result<Expr, RecipeError> {
        self.skip_ws();
        let position = self.pos;
        match self.peek() {
            None => return self.error("unexpected end of input"),
            Some(b) if b.is_ascii_digit() => {
                let digits = self.word().to_string();
                return match digits.parse::<u64>() {
                    Ok(value) => Ok(Expr::Int { value, position }),
                    Err(_) => Err(RecipeError::Syntax { position, message: format!("bad integer `{digits}`") }),
                };
            }
            Some(b) if !is_key_byte(b) => return self.error(format!("unexpected `{}`", b as char)),
            _ => {}
        }
        let name = self.word().to_string();
        if name == "catalog" && self.peek() == Some(b':') {
            self.pos += 1;
            let key = self.word().to_string();
            if key.is_empty() {
                return self.error("expected a catalog key after `catalog:`");
            }
            return Ok(Expr::Catalog { key, position });
        }
        if !self.eat(b'(') {
            return Ok(Expr::Catalog { key: name, position });
        }
        let mut args = vec![self.expr()?];
        loop {
            if self.eat(b')') {
                break;
            }
            if !self.eat(b',') {
                return self.error("expected `,` or `)`");
            }
            args.push(self.expr()?);
        }
        Ok(Expr::Call { name, args, position })
    }
}

pub fn parse_recipe(src: &str) -> Result<Expr, RecipeError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.error("trailing input");
    }
    Ok(e)
}

enum Value {
    Int(u64),
    Graph(Graph),
}

fn eval_value(e: &Expr) -> Result<Value, RecipeError> {
    match e {
        Expr::Int { value, .. } => Ok(Value::Int(*value)),
        Expr::Catalog { key, position } => {
            catalog_graph(key).map(Value::Graph).map_err(|source| RecipeError::Family { position: *position, source })
        }
        Expr::Call { name, args, position } => call(name, args, *position).map(Value::Graph),
    }
}

fn call(name: &str, args: &[Expr], position: usize) -> Result<Graph, RecipeError> {
    let mut values = Vec::with_capacity(args.len());
    for a in args {
        values.push(eval_value(a)?);
    }
    let arity = |expected| RecipeError::Arity { position, name: name.to_string(), expected };
    let ints = || -> Option<Vec<usize>> {
        values.iter().map(|v| if let Value::Int(k) = v { Some(*k as usize) } else { None }).collect()
    };
    let graph_err = |source| RecipeError::Graph { position, source };
    let result = match (name, values.as_slice()) {
        ("complete", [Value::Int(n)]) => Graph::complete(*n as usize),
        ("complete", _) => return Err(arity("one integer")),
        ("empty", [Value::Int(n)]) => Graph::empty(*n as usize),
        ("empty", _) => return Err(arity("one integer")),
        ("cycle", [Value::Int(n)]) => Graph::cycle(*n as usize),
        ("cycle", _) => return Err(arity("one integer")),
        ("path", [Value::Int(n)]) => Graph::path(*n as usize),
        ("path", _) => return Err(arity("one integer")),
        ("kpq", [Value::Int(p), Value::Int(q)]) => Graph::complete_bipartite(*p as usize, *q as usize),
        ("kpq", _) => return Err(arity("two integers")),
        ("kminus", [Value::Int(l)]) => Graph::k_minus(*l as usize),
        ("kminus", _) => return Err(arity("one integer")),
        ("multipartite", _) => match ints() {
            Some(parts) => Graph::complete_multipartite(&parts),
            None => return Err(arity("integers")),
        },
        ("ag3q", [Value::Int(q)]) => {
            return ag3q_family(*q).map_err(|source| RecipeError::Family { position, source });
        }
        ("ag3q", _) => return Err(arity("one integer")),
        ("cone", [Value::Graph(g)]) => g.cone(),
        ("complement", [Value::Graph(g)]) => Ok(g.complement()),
        ("line", [Value::Graph(g)]) => g.line_graph(),
        ("cone" | "complement" | "line", _) => return Err(arity("one graph")),
        ("tensorJ", [Value::Graph(g), Value::Int(m)]) => g.tensor_j(*m as usize),
        ("starJ", [Value::Graph(g), Value::Int(m)]) => g.star_j(*m as usize),
        ("distance", [Value::Graph(g), Value::Int(k)]) => g.distance_graph(*k as usize),
        ("tensorJ" | "starJ" | "distance", _) => return Err(arity("a graph and an integer")),
        ("cartesian", [Value::Graph(g), Value::Graph(h)]) => g.cartesian_product(h),
        ("cartesian", _) => return Err(arity("two graphs")),
        ("union", _) => {
            let graphs: Option<Vec<Graph>> =
                values.iter().map(|v| if let Value::Graph(g) = v { Some(g.clone()) } else { None }).collect();
            match graphs {
                Some(gs) if gs.len() >= 2 => Graph::disjoint_union(&gs),
                _ => return Err(arity("at least two graphs")),
            }
        }
        _ => return Err(RecipeError::UnknownConstructor { position, name: name.to_string() }),
    };
    result.map_err(graph_err)
}

/// Evaluates a parsed recipe to a graph.
pub fn eval(e: &Expr) -> Result<Graph, RecipeError> {
    match eval_value(e)? {
        Value::Graph(g) => Ok(g),
        Value::Int(_) => Err(RecipeError::Syntax { position: e.position(), message: "expected a graph, found an integer".into() }),
    }
}

/// Parses and evaluates `src`; the result is labelled with the recipe text.
pub fn build_recipe(src: &str) -> Result<Graph, RecipeError> {
    let e = parse_recipe(src)?;
    Ok(eval(&e)?.with_label(src.trim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::catalog;
    use crate::iso::are_isomorphic;

    #[test]
    fn parses_nested_calls() {
        let e = parse_recipe(" tensorJ( catalog:LK6 , 2 )").unwrap();
        assert_eq!(e.to_string(), "tensorJ(catalog:LK6,2)");
        let g = eval(&e).unwrap();
        assert_eq!((g.order(), g.edge_count()), (30, 240));
    }

    #[test]
    fn bare_keys_and_paths() {
        assert_eq!(build_recipe("shrikhande").unwrap().order(), 16);
        assert_eq!(build_recipe("catalog:table2/LQ3").unwrap().order(), 12);
        let u = build_recipe("union(complete(2),complete(2),complete(1))").unwrap();
        assert_eq!((u.order(), u.edge_count()), (5, 2));
        assert_eq!(build_recipe("starJ(kminus(4),2)").unwrap().edge_count(), 4 * 12 + 8);
    }

    #[test]
    fn positioned_errors() {
        assert!(matches!(parse_recipe("cone(complete(3)"), Err(RecipeError::Syntax { position: 16, .. })));
        assert!(matches!(parse_recipe("kpq(2,3))"), Err(RecipeError::Syntax { position: 8, .. })));
        assert!(matches!(build_recipe("cone(foo(3))"), Err(RecipeError::UnknownConstructor { position: 5, .. })));
        assert!(matches!(build_recipe("kpq(2)"), Err(RecipeError::Arity { position: 0, .. })));
        assert!(matches!(build_recipe("complement(catalog:nope)"), Err(RecipeError::Family { position: 11, .. })));
        assert!(matches!(build_recipe("complete(0)"), Err(RecipeError::Graph { position: 0, .. })));
        assert!(matches!(build_recipe("ag3q(4)"), Err(RecipeError::Family { .. })));
        assert!(matches!(parse_recipe(""), Err(RecipeError::Syntax { position: 0, .. })));
        assert!(matches!(parse_recipe("line(,)"), Err(RecipeError::Syntax { position: 5, .. })));
    }

    #[test]
    fn catalog_recipes_rebuild_their_graphs() {
        for entry in catalog() {
            let g = build_recipe(entry.recipe).unwrap();
            assert!(are_isomorphic(&g, &entry.graph), "{}", entry.key);
        }
    }
}
