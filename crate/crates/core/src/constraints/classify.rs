use crate::bracket::{gpb, PhaseSpace};
use crate::coeff::Coeff;
use crate::grassmann::Poly;
use crate::linalg::ExactMatrix;

use super::reduce::Reducer;
use super::{ClassTag, Constraint, ConstraintError, ConstraintSet, Stage};

/// `G_jk = [φ_j, φ_k]` on the constraint surface; entries must be constant.
pub fn gram_matrix(
    exprs: &[Poly],
    ps: &PhaseSpace,
    reducer: &Reducer,
) -> Result<ExactMatrix, ConstraintError> {
    let n = exprs.len();
    let mut g = ExactMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            let b = reducer.reduce(&gpb(&exprs[j], &exprs[k], ps)?)?;
            let c = b.as_constant().ok_or_else(|| {
                ConstraintError::Unsupported(
                    "constraint brackets that are not constant on the constraint surface".into(),
                )
            })?;
            g.set(j, k, c);
        }
    }
    Ok(g)
}

/// Separates constraints into first and second class.
///
/// First-class constraints are constant recombinations spanning the null
/// space of the Gram matrix, chosen to involve primary constraints only
/// wherever possible. The remaining originals needed to span the whole set
/// are second class. Output lists first-class constraints before
/// second-class ones, so classifying twice changes nothing.
pub fn classify(set: &ConstraintSet, ps: &PhaseSpace) -> Result<ConstraintSet, ConstraintError> {
    let exprs = set.exprs();
    let n = exprs.len();
    if n == 0 {
        return Ok(ConstraintSet::default());
    }
    let reducer = Reducer::new(&exprs, ps)?;
    let gram = gram_matrix(&exprs, ps, &reducer)?;
    let null = gram.left_null_space();

    // columns of secondary constraints first, so rows pivoting on a
    // primary column are purely primary
    let mut order: Vec<usize> = (0..n)
        .filter(|&j| set.constraints[j].stage != Stage::Primary)
        .collect();
    order.extend((0..n).filter(|&j| set.constraints[j].stage == Stage::Primary));
    let mut first: Vec<Vec<Coeff>> = if null.is_empty() {
        Vec::new()
    } else {
        let permuted = ExactMatrix::from_fn(null.len(), n, |r, c| null[r][order[c]].clone());
        let (red, pivots) = permuted.rref();
        (0..pivots.len())
            .map(|r| {
                let mut v = vec![Coeff::zero(); n];
                for c in 0..n {
                    v[order[c]] = red.get(r, c).clone();
                }
                v
            })
            .collect()
    };
    let leading = |v: &Vec<Coeff>| v.iter().position(|c| !c.is_zero()).unwrap_or(n);
    first.sort_by_key(leading);

    let mut out = Vec::with_capacity(n);
    for v in &first {
        let mut expr = Poly::zero(ps.universe());
        let mut stage = Stage::Primary;
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            expr = expr + exprs[j].scale(c);
            if let Stage::Secondary(l) = set.constraints[j].stage {
                stage = match stage {
                    Stage::Secondary(k) if k >= l => Stage::Secondary(k),
                    _ => Stage::Secondary(l),
                };
            }
        }
        out.push(Constraint {
            expr,
            stage,
            class: ClassTag::First,
        });
    }

    let mut span = first.clone();
    let mut rank = span.len();
    for j in 0..n {
        let mut unit = vec![Coeff::zero(); n];
        unit[j] = Coeff::one();
        span.push(unit);
        let m = ExactMatrix::from_fn(span.len(), n, |r, c| span[r][c].clone());
        let r = m.rank();
        if r > rank {
            rank = r;
            let c = &set.constraints[j];
            out.push(Constraint {
                expr: c.expr.clone(),
                stage: c.stage,
                class: ClassTag::Second,
            });
        } else {
            span.pop();
        }
        if rank == n {
            break;
        }
    }
    Ok(ConstraintSet::new(out))
}
