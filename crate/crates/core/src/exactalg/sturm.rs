use num_traits::Zero;

use super::{midpoint, sign, ExactError, Polynomial, Rational};

/// Sturm chain `p, p', -rem(p, p'), ...` ending at the last nonzero remainder.
pub fn sturm_sequence(p: &Polynomial) -> Result<Vec<Polynomial>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return Ok(seq);
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1])?;
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    Ok(seq)
}

/// Sign changes of the chain evaluated at `x`, zeros skipped.
pub fn sign_variations(seq: &[Polynomial], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for q in seq {
        let s = sign(&q.eval(x));
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn count_roots_in_open_interval(
    p: &Polynomial,
    lo: &Rational,
    hi: &Rational,
) -> Result<usize, ExactError> {
    if lo >= hi {
        return Err(ExactError::EmptyInterval { lo: Box::new(lo.clone()), hi: Box::new(hi.clone()) });
    }
    let mut q = p.square_free_part()?;
    // Simple roots at the endpoints are divided out so the chain is nonzero there.
    for end in [lo, hi] {
        if q.eval(end).is_zero() {
            let lin = Polynomial::linear(-end.clone(), Rational::from_integer(1.into()));
            q = q.div_rem(&lin)?.0;
        }
    }
    let seq = sturm_sequence(&q)?;
    let vlo = sign_variations(&seq, lo);
    let vhi = sign_variations(&seq, hi);
    Ok(vlo - vhi)
}

/// True when `p > 0` everywhere on `(lo, hi)`.
pub fn strictly_positive_on(p: &Polynomial, lo: &Rational, hi: &Rational) -> Result<bool, ExactError> {
    let roots = count_roots_in_open_interval(p, lo, hi)?;
    Ok(roots == 0 && sign(&p.eval(&midpoint(lo, hi))) > 0)
}
