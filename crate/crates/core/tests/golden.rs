//! Each lifted family has a displayed quasi-period. These tests rebuild the
//! display from its formula and compare it with what the family generates.
//! Parameters are chosen so that no displayed entry is zero.

use cfam_core::families::{quotients, ParamSet};
use num_bigint::BigInt;

const TERMS: usize = 48;

fn generated(id: &str, params: &str) -> Vec<BigInt> {
    quotients(id, &ParamSet::parse(params).unwrap(), TERMS).unwrap()
}

/// Concatenates `lead` and `block(n)` for n = start, start + 1, ... and
/// keeps the first TERMS entries.
fn display(lead: &[i128], start: u32, block: impl Fn(u32) -> Vec<i128>) -> Vec<BigInt> {
    let mut out: Vec<i128> = lead.to_vec();
    let mut n = start;
    while out.len() < TERMS {
        out.extend(block(n));
        n += 1;
    }
    out.truncate(TERMS);
    out.into_iter().map(BigInt::from).collect()
}

#[test]
fn t1ex() {
    let (c, e, d, m, p) = (2i128, 1i128, 1i128, 2i128, 3i128);
    let want =
        display(&[], 1, |n| vec![p - 1, 1, c + (d * c / e) * m.pow(2 * n - 1) - 1, p - 1, 1, e + d * m.pow(2 * n) - 1]);
    assert_eq!(generated("t1ex", "c=2,e=1,d=1,m=2,p=3"), want);
}

#[test]
fn t3ex() {
    let (e, f, u, v, p) = (2i128, 1i128, 2i128, 3i128, 4i128);
    let want = display(&[], 1, |n| vec![p - 1, 1, e * u.pow(n) - 1, p - 1, 1, f * v.pow(n) - 1]);
    assert_eq!(generated("t3ex", "e=2,f=1,u=2,v=3,p=4"), want);
}

#[test]
fn tas2_negative_m() {
    let (c, e, d, m) = (3i128, 1i128, 1i128, 3i128);
    let k = d * c / e;
    let want = display(&[], 1, |n| vec![1, k * m.pow(2 * n - 1) - c - 2, 1, d * m.pow(2 * n) + e - 2]);
    assert_eq!(generated("tas2_neg_i", "c=3,e=1,d=1,m=3"), want);

    let want = display(&[k * m + c - 1], 1, |n| vec![1, d * m.pow(2 * n) - e - 2, 1, k * m.pow(2 * n + 1) + c - 2]);
    assert_eq!(generated("tas2_neg_ii", "c=3,e=1,d=1,m=3"), want);
}

#[test]
fn hp_lehmer() {
    let (a, b, u, v, p) = (1i128, 1i128, 2i128, 1i128, 3i128);
    let want = display(&[], 0, |n| {
        let n = n as i128;
        vec![p - 1, 1, u * (a + 2 * n * b) - 1, p - 1, 1, v * (a + (2 * n + 1) * b) - 1]
    });
    assert_eq!(generated("hp_lehmer", "a=1,b=1,u=2,v=1,p=3"), want);
}

#[test]
fn hp_tan() {
    let (u, v, p) = (2i128, 1i128, 3i128);
    let want = display(&[p - 1], 0, |n| {
        let n = n as i128;
        vec![1, (4 * n + 1) * u - 1, p, (4 * n + 3) * v - 1, 1, p - 2]
    });
    assert_eq!(generated("hp_tan", "u=2,v=1,p=3"), want);
}

#[test]
fn hp_tanh() {
    let (u, v, p) = (2i128, 3i128, 3i128);
    let want = display(&[], 0, |n| {
        let n = n as i128;
        vec![p - 1, 1, (4 * n + 1) * u - 1, p - 1, 1, (4 * n + 3) * v - 1]
    });
    assert_eq!(generated("hp_tanh", "u=2,v=3,p=3"), want);
}

#[test]
fn hp_exp() {
    let (u, v, p) = (2i128, 1i128, 3i128);
    let want = display(&[p - 1], 0, |n| {
        let n = n as i128;
        vec![1, (4 * n + 1) * u - 1, p - 1, 1, 2 * v - 1, p, (4 * n + 3) * u - 1, 1, p - 1, 2 * v - 1, 1, p - 2]
    });
    assert_eq!(generated("hp_exp", "u=2,v=1,p=3"), want);
}

#[test]
#[rustfmt::skip]
fn long24() {
    for (params, [e, f, p, q, r, u, v]) in [
        ("e=1,f=1,p=2,q=2,r=3,u=2,v=2", [1i128, 1, 2, 2, 3, 2, 2]),
        ("e=2,f=1,p=3,q=2,r=4,u=2,v=3", [2, 1, 3, 2, 4, 2, 3]),
    ] {
        let want = display(&[], 1, |n| {
            vec![
                r - 1, 1, q - 1, r, p - 1, 1, r - 1, q - 1, 1, r - 1, e * u.pow(n) - 1, 1,
                r - 2, 1, q - 1, r - 1, 1, p - 1, r, q - 1, 1, r - 2, 1, f * v.pow(n) - 1,
            ]
        });
        assert_eq!(generated("long24", params), want, "{params}");
    }
}
