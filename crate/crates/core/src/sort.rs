// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Merge sort driven by a fallible comparator.
//!
//! Oracle comparisons can fail (for example on an infeasible operand), so the
//! standard library sorts do not fit. Merge sort is used for its worst-case
//! `n ceil(log2 n)` comparison bound; it is stable.

use std::cmp::Ordering;

pub fn merge_sort_by<T, E, F>(items: Vec<T>, mut cmp: F) -> Result<Vec<T>, E>
where
    F: FnMut(&T, &T) -> Result<Ordering, E>,
{
    sort_rec(items, &mut cmp)
}

fn sort_rec<T, E, F>(mut items: Vec<T>, cmp: &mut F) -> Result<Vec<T>, E>
where
    F: FnMut(&T, &T) -> Result<Ordering, E>,
{
    if items.len() <= 1 {
        return Ok(items);
    }
    let right = items.split_off(items.len() / 2);
    let left = sort_rec(items, cmp)?;
    let right = sort_rec(right, cmp)?;
    let mut out = Vec::with_capacity(left.len() + right.len());
    let mut l = left.into_iter().peekable();
    let mut r = right.into_iter().peekable();
    loop {
        match (l.peek(), r.peek()) {
            (Some(a), Some(b)) => {
                if cmp(b, a)? == Ordering::Less {
                    out.push(r.next().expect("peeked"));
                } else {
                    out.push(l.next().expect("peeked"));
                }
            }
            (Some(_), None) => out.extend(l.by_ref()),
            (None, Some(_)) => out.extend(r.by_ref()),
            (None, None) => break,
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_stably_within_bound() {
        let items: Vec<(i32, usize)> = [5, 3, 5, 1, 3, 9, 0, 5].iter().copied().zip(0..).collect();
        let mut calls = 0u32;
        let sorted = merge_sort_by(items.clone(), |a, b| {
            calls += 1;
            Ok::<_, ()>(a.0.cmp(&b.0))
        })
        .unwrap();
        let mut expect = items;
        expect.sort_by_key(|p| p.0);
        assert_eq!(sorted, expect);
        assert!(calls <= 8 * 3);
    }

    #[test]
    fn propagates_errors() {
        let r = merge_sort_by(vec![1, 2, 3], |_, _| Err::<Ordering, _>("no"));
        assert_eq!(r, Err("no"));
    }
}
