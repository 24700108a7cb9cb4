use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Decimal rendering with exactly `digits` significant digits, rounded half
/// up. Plain notation for exponents in `-5..6`, scientific otherwise.
pub fn decimal(r: &BigRational, digits: usize) -> String {
    if r.is_zero() {
        return format!("{:.*}", digits.saturating_sub(1), 0.0);
    }
    let neg = r.is_negative();
    let (num, den) = (r.numer().abs(), r.denom().abs());
    let ten = BigInt::from(10);
    // exponent e with 10^e <= num/den < 10^(e+1)
    let mut e: i64 = num.to_string().len() as i64 - den.to_string().len() as i64;
    let scaled = |e: i64| -> (BigInt, BigInt) {
        if e >= 0 {
            (num.clone(), &den * ten.pow(e as u32))
        } else {
            (&num * ten.pow((-e) as u32), den.clone())
        }
    };
    loop {
        let (a, b) = scaled(e);
        if a < b {
            e -= 1;
        } else if a >= &b * &ten {
            e += 1;
        } else {
            break;
        }
    }
    let shift = digits as i64 - 1 - e;
    let (a, b) = if shift >= 0 {
        (&num * ten.pow(shift as u32), den.clone())
    } else {
        (num.clone(), &den * ten.pow((-shift) as u32))
    };
    let mut m: BigInt = (&a * 2 + &b) / (&b * 2);
    if m.to_string().len() > digits {
        m /= &ten;
        e += 1;
    }
    let ds = m.to_string();
    let sign = if neg { "-" } else { "" };
    let body = if (-5..6).contains(&e) {
        if e >= 0 {
            let int_len = e as usize + 1;
            if int_len >= ds.len() {
                format!("{ds}{}", "0".repeat(int_len - ds.len()))
            } else {
                format!("{}.{}", &ds[..int_len], &ds[int_len..])
            }
        } else {
            format!("0.{}{ds}", "0".repeat((-e - 1) as usize))
        }
    } else {
        let (head, tail) = ds.split_at(1);
        if tail.is_empty() {
            format!("{head}e{e}")
        } else {
            format!("{head}.{tail}e{e}")
        }
    };
    format!("{sign}{body}")
}
