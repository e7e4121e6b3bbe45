use alloc::string::{String, ToString};
use core::fmt::Write;

use num_traits::{One, Signed};

use super::{Polynomial, RatFn, Rational, VarRegistry};

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

fn var_name(reg: &VarRegistry, v: usize) -> String {
    match reg.name(v) {
        Some(n) => n.to_string(),
        None => alloc::format!("x{}", v),
    }
}

/// Terms in descending graded-lex order, e.g. `x1^2*x2 - 3/2*x1 + 1`.
pub fn format_polynomial(p: &Polynomial, reg: &VarRegistry) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut parts: alloc::vec::Vec<String> = alloc::vec::Vec::new();
        if m.is_one() || !a.is_one() {
            parts.push(format_rational(&a));
        } else if k == 0 && neg {
            // `-x1^2` would read as `(-x1)^2`
            let first = m.exponents().iter().find(|&&e| e > 0).copied().unwrap_or(0);
            if first > 1 {
                parts.push("1".to_string());
            }
        }
        for (v, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(var_name(reg, v)),
                _ => parts.push(alloc::format!("{}^{}", var_name(reg, v), e)),
            }
        }
        out.push_str(&parts.join("*"));
    }
    out
}

pub(super) fn format_ratfn(f: &RatFn, reg: &VarRegistry) -> String {
    let num = f.numerator();
    let den = f.denominator();
    if den.is_constant() {
        return format_polynomial(&num, reg);
    }
    let mut s = String::new();
    let _ = write!(
        s,
        "({})/({})",
        format_polynomial(&num, reg),
        format_polynomial(&den, reg)
    );
    s
}
