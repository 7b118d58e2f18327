//! Dispatch of validated configs to the library, producing JSON payloads.

use std::collections::HashMap;

use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use tensorlab::binary_form::BinaryForm;
use tensorlab::decomp::{
    gross_check, gross_minimality_check, kruskal_rank, kruskal_uniqueness, strassen_experiment,
    sylvester_decompose_binary, Decomposition, GrossVerdict,
};
use tensorlab::field::{format_rational, parse_rational};
use tensorlab::io::{parse_graph, parse_ring, parse_tensor, AnyTensor, DecompositionJson, SubspaceJson};
use tensorlab::kronecker::{
    cone_sample, kronecker_coefficient, partitions_of, plethysm_multiplicity, rectangular_kronecker,
    stretching_check, weyl_zero_weight_invariant_exists, Partition,
};
use tensorlab::matchgate::{
    mgi_residuals, pfaffian, pfaffian_orientation_search, sub_pfaffian_vector, transform_signature,
    Side, SignatureVector, SkewMatrix,
};
use tensorlab::matrix::rank_numeric;
use tensorlab::minrank::{
    friedland_check, gurvits_construction, min_entropy_sample, min_rank_exact_fp, min_rank_sample,
    reduce_mod_p, LogBase,
};
use tensorlab::rank::{exact_rank_bruteforce, w_state, w_state_decomposition};
use tensorlab::terracini::{generic_rank, secant_dimension, VarietySpec};
use tensorlab::{Bipartition, DenseTensor, Field, Matrix, PrimeField, Rationals, Ring};

use crate::config::*;
use crate::error::{read_file, CliError};

/// Completed scan cells `(variety, r) -> row`, for one seed and trial count.
pub type ScanCache = HashMap<(String, usize), Value>;

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("payload types serialize")
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub fn payload(cfg: &ValidConfig, cache: &ScanCache) -> Result<Value, CliError> {
    let seed = cfg.echo.seed;
    match &cfg.params {
        Params::Terracini(p) => terracini(p, seed, cache),
        Params::Rank(p) => rank(p),
        Params::Decompose(p) => decompose(p),
        Params::Kron(p) => kron(p),
        Params::Matchgate(p) => matchgate(p),
        Params::Minrank(p) => minrank(p, seed),
    }
}

fn variety(s: &str) -> Result<VarietySpec, CliError> {
    s.parse::<VarietySpec>()
        .map_err(|e| invalid(format!("variety `{s}`: {e}")))
}

fn terracini(p: &TerraciniParams, seed: u64, cache: &ScanCache) -> Result<Value, CliError> {
    match p.mode {
        TerraciniMode::Secant => {
            let spec = variety(&require(&p.variety, "variety", "mode secant")?)?;
            let r = require(&p.r, "r", "mode secant")?;
            let rep = secant_dimension(&spec, r, p.trials, seed)?;
            let mut v = to_value(&rep);
            v["defective"] = json!(rep.is_defective());
            Ok(v)
        }
        TerraciniMode::GenericRank => {
            let spec = variety(&require(&p.variety, "variety", "mode generic_rank")?)?;
            let g = generic_rank(&spec, p.trials, seed)?;
            Ok(json!({
                "variety": g.variety,
                "generic_rank": g.generic_rank,
                "defective_r": g.defective().map(|c| c.r).collect::<Vec<_>>(),
                "rows": g.profile,
            }))
        }
        TerraciniMode::Scan => {
            let names = match (&p.varieties, &p.variety) {
                (Some(v), _) if !v.is_empty() => v.clone(),
                (_, Some(v)) => vec![v.clone()],
                _ => return Err(invalid("parameters.varieties: required for mode scan")),
            };
            let specs = names.iter().map(|s| variety(s)).collect::<Result<Vec<_>, _>>()?;
            let per_spec = specs
                .par_iter()
                .map(|spec| scan_spec(spec, p.r_max, p.trials, seed, cache))
                .collect::<Result<Vec<_>, _>>()?;
            let rows: Vec<Value> = per_spec.into_iter().flatten().collect();
            let defective: Vec<Value> = rows
                .iter()
                .filter(|r| r["defect"].as_u64().unwrap_or(0) > 0)
                .map(|r| json!({"variety": r["variety"], "r": r["r"]}))
                .collect();
            Ok(json!({ "rows": rows, "defective": defective }))
        }
    }
}

/// Cells `r = 1, 2, …` up to `r_max`, or until the ambient space is filled.
fn scan_spec(
    spec: &VarietySpec,
    r_max: Option<usize>,
    trials: usize,
    seed: u64,
    cache: &ScanCache,
) -> Result<Vec<Value>, CliError> {
    spec.validate()?;
    let name = spec.to_string();
    let ambient = spec.ambient_dim();
    let mut rows = Vec::new();
    for r in 1..=r_max.unwrap_or(ambient) {
        let row = match cache.get(&(name.clone(), r)) {
            Some(v) => v.clone(),
            None => to_value(&secant_dimension(spec, r, trials, seed)?),
        };
        let full = row["computed_affine_dim"].as_u64() == Some(ambient as u64);
        rows.push(row);
        if full && r_max.is_none() {
            break;
        }
    }
    Ok(rows)
}

fn load_tensor(path: &str) -> Result<AnyTensor, CliError> {
    Ok(parse_tensor(&read_file(path)?)?)
}

fn flattening_rows<F: Field>(t: &DenseTensor<F>, rank: impl Fn(&Matrix<F>) -> Result<usize, CliError>) -> Result<Vec<Value>, CliError> {
    Bipartition::all(t.order())
        .iter()
        .map(|b| {
            let m = t.flatten(b)?;
            Ok(json!({"left": b.left(), "right": b.right(), "rank": rank(&m)?}))
        })
        .collect()
}

fn rank_summary<F: Field>(t: &DenseTensor<F>, rank: impl Fn(&Matrix<F>) -> Result<usize, CliError>) -> Result<Value, CliError> {
    let rows = flattening_rows(t, &rank)?;
    let ml: Vec<usize> = (0..t.order())
        .map(|i| rank(&t.mode_flattening(i)?))
        .collect::<Result<_, _>>()?;
    let lower = rows.iter().filter_map(|r| r["rank"].as_u64()).max().unwrap_or(0);
    Ok(json!({
        "dims": t.dims(),
        "ring": t.ring().to_string(),
        "flattenings": rows,
        "multilinear_rank": ml,
        "border_rank_lower_bound": lower,
    }))
}

fn rank(p: &RankParams) -> Result<Value, CliError> {
    let tensor = match (&p.tensor_file, p.w_state) {
        (Some(path), None) => load_tensor(path)?,
        (None, Some(n)) => match parse_ring(p.ring.as_deref().unwrap_or("rational"))? {
            Ring::Rational => AnyTensor::Rational(w_state(&Rationals, n)?),
            Ring::Prime(q) => AnyTensor::Prime(w_state(&PrimeField::new(q)?, n)?),
            Ring::Float => return Err(invalid("parameters.ring: w_state needs an exact ring")),
        },
        _ => return Err(invalid("parameters: give exactly one of tensor_file or w_state")),
    };
    let exact = |m: &Matrix<_>| -> Result<usize, CliError> { Ok(m.rank()) };
    let mut out = match &tensor {
        AnyTensor::Rational(t) => rank_summary(t, exact)?,
        AnyTensor::Prime(t) => rank_summary(t, |m: &Matrix<PrimeField>| Ok(m.rank()))?,
        AnyTensor::Float(t) => rank_summary(t, |m| Ok(rank_numeric(m, p.tol)?))?,
    };
    if let Some(n) = p.w_state {
        let ok = match &tensor {
            AnyTensor::Rational(t) => w_state_decomposition(&Rationals, n)?.reconstruct() == *t,
            AnyTensor::Prime(t) => w_state_decomposition(t.field(), n)?.reconstruct() == *t,
            AnyTensor::Float(_) => unreachable!("rejected above"),
        };
        out["w_decomposition"] = json!({"terms": n, "reconstructs": ok});
    }
    if let Some(r_max) = p.bruteforce_rmax {
        let AnyTensor::Prime(t) = &tensor else {
            return Err(invalid("parameters.bruteforce_rmax: exhaustive search needs ring fp p"));
        };
        out["bruteforce"] = to_value(&exact_rank_bruteforce(t, r_max)?);
    }
    Ok(out)
}

fn rationals(v: &[String], field: &str) -> Result<Vec<BigRational>, CliError> {
    v.iter()
        .map(|s| parse_rational(s).map_err(|e| invalid(format!("parameters.{field}: {e}"))))
        .collect()
}

fn load_decomposition(path: &str) -> Result<Decomposition<Rationals>, CliError> {
    let j: DecompositionJson =
        serde_json::from_str(&read_file(path)?).map_err(|e| invalid(format!("{path}: {e}")))?;
    Ok(j.to_decomposition()?)
}

fn rational_tensor(path: &str) -> Result<DenseTensor<Rationals>, CliError> {
    match load_tensor(path)? {
        AnyTensor::Rational(t) => Ok(t),
        other => Err(invalid(format!("{path}: expected a rational tensor, found {}", other.ring()))),
    }
}

fn prime_tensor(path: &str) -> Result<DenseTensor<PrimeField>, CliError> {
    match load_tensor(path)? {
        AnyTensor::Prime(t) => Ok(t),
        other => Err(invalid(format!("{path}: expected an fp tensor, found {}", other.ring()))),
    }
}

fn decompose(p: &DecomposeParams) -> Result<Value, CliError> {
    match p.method {
        DecomposeMethod::Sylvester => {
            let coeffs = rationals(&require(&p.form, "form", "method sylvester")?, "form")?;
            let form = BinaryForm::new(coeffs)?;
            let w = sylvester_decompose_binary(&form)?;
            let mut v = w.to_json();
            v["rank"] = json!(w.rank());
            Ok(v)
        }
        DecomposeMethod::Gross => {
            let t = rational_tensor(&require(&p.tensor_file, "tensor_file", "method gross")?)?;
            let d = load_decomposition(&require(&p.decomposition_file, "decomposition_file", "method gross")?)?;
            let rep = gross_check(&t, &d)?;
            let verdict = match rep.verdict {
                GrossVerdict::Symmetric => "symmetric",
                GrossVerdict::HypothesisNotMet => "hypothesis_not_met",
                GrossVerdict::Contradiction => "contradiction",
            };
            Ok(json!({
                "verdict": verdict,
                "independence": rep.independence.iter().map(|c| json!({
                    "subset": c.subset, "rank": c.rank, "independent": c.independent,
                })).collect::<Vec<_>>(),
                "certificates": rep.certificates.iter().map(|c| c.as_ref().map(|v| {
                    v.iter().map(format_rational).collect::<Vec<_>>()
                })).collect::<Vec<_>>(),
                "dual_checks_passed": rep.dual_checks_passed,
                "minimal": gross_minimality_check(&t, &d)?,
            }))
        }
        DecomposeMethod::Kruskal => {
            let d = load_decomposition(&require(&p.decomposition_file, "decomposition_file", "method kruskal")?)?;
            let ranks = (0..d.order())
                .map(|k| kruskal_rank(&d.factor_matrix(k)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(json!({
                "terms": d.len(),
                "kruskal_ranks": ranks,
                "unique": kruskal_uniqueness(&d)?,
            }))
        }
        DecomposeMethod::Strassen => {
            let t1 = prime_tensor(&require(&p.tensor_file, "tensor_file", "method strassen")?)?;
            let t2 = prime_tensor(&require(&p.second_tensor_file, "second_tensor_file", "method strassen")?)?;
            let r_max = require(&p.r_max, "r_max", "method strassen")?;
            Ok(to_value(&strassen_experiment(&t1, &t2, r_max)?))
        }
    }
}

fn partition(v: &Option<String>, field: &str, mode: &str) -> Result<Partition, CliError> {
    let s = require(v, field, mode)?;
    s.parse::<Partition>()
        .map_err(|e| invalid(format!("parameters.{field}: {e}")))
}

fn kron(p: &KronParams) -> Result<Value, CliError> {
    match p.mode {
        KronMode::Coefficient => {
            let (l, m, n) = (
                partition(&p.lambda, "lambda", "mode coefficient")?,
                partition(&p.mu, "mu", "mode coefficient")?,
                partition(&p.nu, "nu", "mode coefficient")?,
            );
            let k = kronecker_coefficient(&l, &m, &n)?;
            Ok(json!({"lambda": l, "mu": m, "nu": n, "k": k}))
        }
        KronMode::Rectangle => {
            let d = require(&p.d, "d", "mode rectangle")?;
            let n = require(&p.n, "n", "mode rectangle")?;
            let lambdas = match &p.lambda {
                Some(_) => vec![partition(&p.lambda, "lambda", "mode rectangle")?],
                None => partitions_of(d * n)?,
            };
            let rows = lambdas
                .par_iter()
                .map(|l| rectangular_kronecker(l, d, n).map(|r| to_value(&r)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(json!({ "rows": rows }))
        }
        KronMode::Cone => {
            let dims = (
                require(&p.p, "p", "mode cone")?,
                require(&p.q, "q", "mode cone")?,
                require(&p.r, "r", "mode cone")?,
            );
            let n_max = require(&p.n_max, "n_max", "mode cone")?;
            let rows = cone_sample(dims.0, dims.1, dims.2, n_max)?;
            let rows: Vec<Value> = if p.stretch {
                stretching_check(&rows)?
                    .into_iter()
                    .map(|(row, k2)| {
                        let mut v = to_value(&row);
                        v["k_doubled"] = json!(k2);
                        v
                    })
                    .collect()
            } else {
                rows.iter().map(to_value).collect()
            };
            Ok(json!({ "rows": rows }))
        }
        KronMode::Plethysm => {
            let l = partition(&p.lambda, "lambda", "mode plethysm")?;
            let d = require(&p.d, "d", "mode plethysm")?;
            let n = require(&p.n, "n", "mode plethysm")?;
            let a = require(&p.a, "a", "mode plethysm")?;
            Ok(json!({"lambda": l, "d": d, "n": n, "a": a, "multiplicity": plethysm_multiplicity(&l, d, n, a)?}))
        }
        KronMode::Weyl => {
            let l = partition(&p.lambda, "lambda", "mode weyl")?;
            let a = require(&p.a, "a", "mode weyl")?;
            Ok(json!({"lambda": l, "a": a, "invariant_exists": weyl_zero_weight_invariant_exists(&l, a)?}))
        }
    }
}

fn rational_matrix(rows: &[Vec<String>], field: &str) -> Result<Matrix<Rationals>, CliError> {
    let rows = rows
        .iter()
        .map(|r| rationals(r, field))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(Rationals, rows)?)
}

fn strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn matchgate(p: &MatchgateParams) -> Result<Value, CliError> {
    match p.mode {
        MatchgateMode::Pfaffian => {
            let m = rational_matrix(&require(&p.matrix, "matrix", "mode pfaffian")?, "matrix")?;
            let a = SkewMatrix::from_matrix(&m)?;
            Ok(json!({"size": a.size(), "pfaffian": format_rational(&pfaffian(&a)?)}))
        }
        MatchgateMode::Signature => {
            let m = rational_matrix(&require(&p.matrix, "matrix", "mode signature")?, "matrix")?;
            let a = SkewMatrix::from_matrix(&m)?;
            let universe = p.universe.clone().unwrap_or_else(|| (0..a.size()).collect());
            let s = sub_pfaffian_vector(&a, &universe)?;
            let residuals = mgi_residuals(&s)?;
            Ok(json!({
                "universe": universe,
                "signature": strings(s.entries()),
                "satisfies_mgi": residuals.iter().all(|r| Rationals.is_zero(r)),
            }))
        }
        MatchgateMode::Matchings => {
            let g = parse_graph(&read_file(&require(&p.graph_file, "graph_file", "mode matchings")?)?)?;
            let res = pfaffian_orientation_search(&g)?;
            Ok(json!({
                "nodes": g.nodes(),
                "edges": g.edges().len(),
                "matchings": format_rational(&res.matchings),
                "orientation": res.orientation,
                "pfaffian": res.pfaffian.as_ref().map(format_rational),
                "candidates_checked": res.candidates_checked,
            }))
        }
        MatchgateMode::Mgi => {
            let v = rationals(&require(&p.signature, "signature", "mode mgi")?, "signature")?;
            let s = SignatureVector::new(Rationals, v)?;
            let residuals = mgi_residuals(&s)?;
            let nonzero = residuals.iter().filter(|r| !Rationals.is_zero(r)).count();
            Ok(json!({
                "wires": s.wires(),
                "identities": residuals.len(),
                "nonzero_residuals": nonzero,
                "satisfies_mgi": nonzero == 0,
            }))
        }
        MatchgateMode::Transform => {
            let v = rationals(&require(&p.signature, "signature", "mode transform")?, "signature")?;
            let b = rational_matrix(&require(&p.basis, "basis", "mode transform")?, "basis")?;
            let side = match p.side {
                SideParam::Generator => Side::Generator,
                SideParam::Recognizer => Side::Recognizer,
            };
            Ok(json!({"signature": strings(&transform_signature(&v, &Rationals, &b, side)?)}))
        }
    }
}

fn load_subspace(path: &str) -> Result<tensorlab::minrank::MatrixSubspace<Rationals>, CliError> {
    let j: SubspaceJson = serde_json::from_str(&read_file(path)?).map_err(|e| invalid(format!("{path}: {e}")))?;
    Ok(j.to_subspace()?)
}

fn minrank(p: &MinrankParams, seed: u64) -> Result<Value, CliError> {
    match p.mode {
        MinrankMode::Gurvits => Ok(to_value(&gurvits_construction(require(&p.n, "n", "mode gurvits")?)?)),
        MinrankMode::Friedland => Ok(to_value(&friedland_check(require(&p.n, "n", "mode friedland")?)?)),
        MinrankMode::Exact => {
            let s = load_subspace(&require(&p.subspace_file, "subspace_file", "mode exact")?)?;
            let q = require(&p.modulus, "modulus", "mode exact")?;
            let f = PrimeField::new(q)?;
            let sp = reduce_mod_p(&s, &f)
                .ok_or_else(|| invalid(format!("subspace does not reduce to an independent family mod {q}")))?;
            Ok(to_value(&min_rank_exact_fp(&sp)?))
        }
        MinrankMode::Sample => {
            let s = load_subspace(&require(&p.subspace_file, "subspace_file", "mode sample")?)?;
            let r = min_rank_sample(&s, p.trials, seed)?;
            Ok(json!({
                "min_rank": r.min_rank,
                "coefficients": strings(&r.coefficients),
                "certified": r.certified,
                "evaluated": r.evaluated,
            }))
        }
        MinrankMode::Entropy => {
            let s = load_subspace(&require(&p.subspace_file, "subspace_file", "mode entropy")?)?;
            let h = min_entropy_sample(&s, p.trials, seed, LogBase::E)?;
            Ok(json!({"min_entropy_upper_bound": h, "base": "e", "certified": false}))
        }
    }
}
