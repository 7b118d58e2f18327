//! Text and JSON formats.
//!
//! Tensor text:
//!
//! ```text
//! tensor v1
//! 2 2
//! rational
//! 1 0
//! 0 -1/2
//! ```
//!
//! Entries follow the header in row-major order, whitespace separated. The
//! canonical emitter writes one line per run of the last index.
//!
//! Graph text: `graph v1`, the node count, then `i j weight` per edge.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, Field, PrimeField, Rationals, Reals, Ring};
use crate::matchgate::WeightedGraph;
use crate::matrix::Matrix;
use crate::minrank::MatrixSubspace;
use crate::tensor::{DenseTensor, Shape};

/// A tensor over whichever ring its file declares.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyTensor {
    Rational(DenseTensor<Rationals>),
    Prime(DenseTensor<PrimeField>),
    Float(DenseTensor<Reals>),
}

impl AnyTensor {
    pub fn ring(&self) -> Ring {
        match self {
            AnyTensor::Rational(t) => t.ring(),
            AnyTensor::Prime(t) => t.ring(),
            AnyTensor::Float(t) => t.ring(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        match self {
            AnyTensor::Rational(t) => t.dims(),
            AnyTensor::Prime(t) => t.dims(),
            AnyTensor::Float(t) => t.dims(),
        }
    }

    fn entry_strings(&self) -> Vec<String> {
        match self {
            AnyTensor::Rational(t) => t.data().iter().map(format_rational).collect(),
            AnyTensor::Prime(t) => t.data().iter().map(u32::to_string).collect(),
            AnyTensor::Float(t) => t.data().iter().map(f64::to_string).collect(),
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses a ring line: `rational`, `fp <p>` or `float`.
pub fn parse_ring(s: &str) -> Result<Ring> {
    let words: Vec<&str> = s.split_whitespace().collect();
    match words.as_slice() {
        ["rational"] => Ok(Ring::Rational),
        ["float"] => Ok(Ring::Float),
        ["fp", p] => {
            let p: u32 = p.parse().map_err(|_| Error::invalid(format!("bad modulus `{p}`")))?;
            PrimeField::new(p)?;
            Ok(Ring::Prime(p))
        }
        _ => Err(Error::invalid(format!("unknown ring `{}`", s.trim()))),
    }
}

pub fn parse_tensor(text: &str) -> Result<AnyTensor> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut next = |what: &str| lines.next().ok_or_else(|| perr(0, format!("missing {what} line")));
    let (n, magic) = next("header")?;
    if magic.trim() != "tensor v1" {
        return Err(perr(n, format!("expected `tensor v1`, found `{}`", magic.trim())));
    }
    let (n, dims_line) = next("dimension")?;
    let dims = dims_line
        .split_whitespace()
        .map(|w| w.parse::<usize>().map_err(|_| perr(n, format!("bad dimension `{w}`"))))
        .collect::<Result<Vec<_>>>()?;
    let shape = Shape::new(dims).map_err(|e| perr(n, e.to_string()))?;
    let (n, ring_line) = next("ring")?;
    let ring = parse_ring(ring_line).map_err(|e| perr(n, e.to_string()))?;
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    for (n, l) in lines {
        tokens.extend(l.split_whitespace().map(|w| (n, w)));
    }
    if tokens.len() != shape.volume() {
        let line = tokens.last().map_or(n, |t| t.0);
        return Err(perr(line, format!("{} entries, shape needs {}", tokens.len(), shape.volume())));
    }
    let parse_q = |&(n, w): &(usize, &str)| parse_rational(w).map_err(|e| perr(n, e.to_string()));
    Ok(match ring {
        Ring::Rational => {
            let data = tokens.iter().map(parse_q).collect::<Result<Vec<_>>>()?;
            AnyTensor::Rational(DenseTensor::new(Rationals, shape, data)?)
        }
        Ring::Prime(p) => {
            let f = PrimeField::new(p)?;
            let data = tokens
                .iter()
                .map(|t| {
                    let q = parse_q(t)?;
                    f.reduce(&q).ok_or_else(|| perr(t.0, format!("`{}` has a denominator divisible by {p}", t.1)))
                })
                .collect::<Result<Vec<_>>>()?;
            AnyTensor::Prime(DenseTensor::new(f, shape, data)?)
        }
        Ring::Float => {
            let data = tokens
                .iter()
                .map(|&(n, w)| match w.parse::<f64>() {
                    Ok(x) if x.is_finite() => Ok(x),
                    Ok(_) => Err(perr(n, format!("non-finite entry `{w}`"))),
                    Err(_) => Err(perr(n, format!("bad float `{w}`"))),
                })
                .collect::<Result<Vec<_>>>()?;
            AnyTensor::Float(DenseTensor::new(Reals, shape, data)?)
        }
    })
}

pub fn emit_tensor(t: &AnyTensor) -> String {
    let dims = t.dims();
    let mut out = String::from("tensor v1\n");
    out.push_str(&dims.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
    out.push('\n');
    out.push_str(&t.ring().to_string());
    out.push('\n');
    let last = *dims.last().expect("shapes have a factor");
    for row in t.entry_strings().chunks(last) {
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph<Rationals>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (n, magic) = lines.next().ok_or_else(|| perr(0, "empty graph file"))?;
    if magic != "graph v1" {
        return Err(perr(n, format!("expected `graph v1`, found `{magic}`")));
    }
    let (n, count) = lines.next().ok_or_else(|| perr(n, "missing node count"))?;
    let nodes: usize = count.parse().map_err(|_| perr(n, format!("bad node count `{count}`")))?;
    let mut edges = Vec::new();
    for (n, l) in lines {
        let w: Vec<&str> = l.split_whitespace().collect();
        let [i, j, weight] = w.as_slice() else {
            return Err(perr(n, "expected `i j weight`"));
        };
        let i: usize = i.parse().map_err(|_| perr(n, format!("bad node `{i}`")))?;
        let j: usize = j.parse().map_err(|_| perr(n, format!("bad node `{j}`")))?;
        let weight = parse_rational(weight).map_err(|e| perr(n, e.to_string()))?;
        if i == j {
            return Err(perr(n, format!("self-loop at node {i}")));
        }
        edges.push((i.min(j), i.max(j), weight));
    }
    WeightedGraph::new(Rationals, nodes, edges)
}

pub fn emit_graph(g: &WeightedGraph<Rationals>) -> String {
    let mut out = format!("graph v1\n{}\n", g.nodes());
    for (i, j, w) in g.edges() {
        out.push_str(&format!("{i} {j} {}\n", format_rational(w)));
    }
    out
}

fn strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn rationals(v: &[String]) -> Result<Vec<BigRational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

/// Subspace JSON: ambient dims and matrices as rows of rational strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceJson {
    pub ambient: [usize; 2],
    pub matrices: Vec<Vec<Vec<String>>>,
}

impl SubspaceJson {
    pub fn from_subspace(s: &MatrixSubspace<Rationals>) -> Self {
        SubspaceJson {
            ambient: [s.rows(), s.cols()],
            matrices: s
                .basis()
                .iter()
                .map(|m| (0..m.rows()).map(|i| strings(m.row(i))).collect())
                .collect(),
        }
    }

    pub fn to_subspace(&self) -> Result<MatrixSubspace<Rationals>> {
        let [r, c] = self.ambient;
        let basis = self
            .matrices
            .iter()
            .map(|m| {
                let rows = m.iter().map(|row| rationals(row)).collect::<Result<Vec<_>>>()?;
                if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                    return Err(Error::dim(format!("matrix is not {r}x{c}")));
                }
                Matrix::from_rows(Rationals, rows)
            })
            .collect::<Result<Vec<_>>>()?;
        MatrixSubspace::new(Rationals, r, c, basis)
    }
}

/// Decomposition JSON: each summand is a list of factor vectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    pub shape: Vec<usize>,
    pub summands: Vec<Vec<Vec<String>>>,
}

impl DecompositionJson {
    pub fn from_decomposition(d: &Decomposition<Rationals>) -> Self {
        DecompositionJson {
            shape: d.shape().dims().to_vec(),
            summands: d
                .summands()
                .iter()
                .map(|s| s.iter().map(|v| strings(v)).collect())
                .collect(),
        }
    }

    pub fn to_decomposition(&self) -> Result<Decomposition<Rationals>> {
        let summands = self
            .summands
            .iter()
            .map(|s| s.iter().map(|v| rationals(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Decomposition::new(Rationals, Shape::new(self.shape.clone())?, summands)
    }
}

/// Signature vector entries as strings, ordered by subset index.
pub fn signature_json<F: Field>(entries: &[F::Elem], fmt: impl Fn(&F::Elem) -> String) -> serde_json::Value {
    serde_json::Value::Array(entries.iter().map(|e| serde_json::Value::String(fmt(e))).collect())
}

/// Parses a JSON array of rational strings (or integers).
pub fn parse_rational_array(v: &serde_json::Value) -> Result<Vec<BigRational>> {
    let arr = v.as_array().ok_or_else(|| Error::invalid("expected a JSON array"))?;
    arr.iter()
        .map(|x| match x {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap_or(0).into())),
            other => Err(Error::invalid(format!("`{other}` is not a rational string"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rational};

    const SAMPLE: &str = "tensor v1\n2 3\nrational\n1 -1/2 0\n3/4 5 -6\n";

    #[test]
    fn tensor_roundtrip_is_canonical() {
        let t = parse_tensor(SAMPLE).unwrap();
        assert_eq!(emit_tensor(&t), SAMPLE);
        let messy = "tensor v1\n2  3\nrational\n1 -2/4\n0 6/8 5\n-6\n\n";
        assert_eq!(emit_tensor(&parse_tensor(messy).unwrap()), SAMPLE);
        let AnyTensor::Rational(r) = t else { panic!() };
        assert_eq!(r.get(&[0, 1]), &rational(-1, 2));
    }

    #[test]
    fn tensor_rings() {
        let t = parse_tensor("tensor v1\n2 2\nfp 5\n-1 7\n1/2 0\n").unwrap();
        assert_eq!(emit_tensor(&t), "tensor v1\n2 2\nfp 5\n4 2\n3 0\n");
        let f = parse_tensor("tensor v1\n2\nfloat\n0.5 -2\n").unwrap();
        assert_eq!(emit_tensor(&f), "tensor v1\n2\nfloat\n0.5 -2\n");
        assert_eq!(emit_tensor(&parse_tensor(&emit_tensor(&f)).unwrap()), emit_tensor(&f));
    }

    #[test]
    fn tensor_errors_name_lines() {
        let cases = [
            ("tensor v2\n2\nrational\n1 2\n", 1),
            ("tensor v1\n2 x\nrational\n1 2\n", 2),
            ("tensor v1\n2\ncomplex\n1 2\n", 3),
            ("tensor v1\n2\nrational\n1 2 3\n", 4),
            ("tensor v1\n2\nrational\n1\n2/0\n", 5),
            ("tensor v1\n2\nfp 4\n1 2\n", 3),
            ("tensor v1\n2\nfloat\n1 inf\n", 4),
        ];
        for (text, line) in cases {
            match parse_tensor(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn graph_roundtrip() {
        let text = "graph v1\n4\n0 1 1\n2 1 -3/2\n2 3 1\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edges()[1], (1, 2, rational(-3, 2)));
        let canon = emit_graph(&g);
        assert_eq!(canon, "graph v1\n4\n0 1 1\n1 2 -3/2\n2 3 1\n");
        assert_eq!(emit_graph(&parse_graph(&canon).unwrap()), canon);
        assert!(parse_graph("graph v1\n2\n0 0 1\n").is_err());
        assert!(parse_graph("graph v1\n2\n0 5 1\n").is_err());
        assert!(parse_graph("graph v1\n2\n0 1\n").is_err());
    }

    #[test]
    fn subspace_and_decomposition_json() {
        let m = Matrix::from_rows(Rationals, vec![vec![int(1), rational(1, 3)], vec![int(0), int(-2)]]).unwrap();
        let s = MatrixSubspace::new(Rationals, 2, 2, vec![m]).unwrap();
        let j = SubspaceJson::from_subspace(&s);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"ambient":[2,2],"matrices":[[["1","1/3"],["0","-2"]]]}"#);
        let back: SubspaceJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_subspace().unwrap(), s);
        assert!(serde_json::from_str::<SubspaceJson>(r#"{"ambient":[1,1],"matrices":[],"x":1}"#).is_err());

        let d = Decomposition::from_summands(
            Rationals,
            vec![vec![vec![int(1), rational(2, 5)], vec![int(3)]], vec![vec![int(0), int(1)], vec![int(-1)]]],
        )
        .unwrap();
        let j = DecompositionJson::from_decomposition(&d);
        let text = serde_json::to_string(&j).unwrap();
        let back: DecompositionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_decomposition().unwrap(), d);
        assert!(text.contains("\"2/5\""));
    }

    #[test]
    fn rational_arrays() {
        let v = signature_json::<Rationals>(&[int(0), rational(1, 2)], format_rational);
        assert_eq!(v.to_string(), r#"["0","1/2"]"#);
        assert_eq!(parse_rational_array(&v).unwrap(), vec![int(0), rational(1, 2)]);
        assert_eq!(parse_rational_array(&serde_json::json!([1, "2"])).unwrap(), vec![int(1), int(2)]);
        assert!(parse_rational_array(&serde_json::json!([1.5])).is_err());
    }
}
