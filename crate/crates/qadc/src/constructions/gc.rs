//! Generalized concatenation.
//!
//! Outer-code symbols are replaced block-wise by codewords of the matching
//! member of a disjoint inner-code partition. Even lengths use length-2
//! inner blocks throughout; odd lengths place one longer inner block in the
//! leading coordinates. The assembled classical code is self-complementary,
//! and its lift is the quantum code.

use super::inner::{inner_registry, InducedChannel, InnerCodeEntry};
use super::outer::{outer_registry, OuterCodeEntry, OuterProperty};
use super::{lift, GcFlavor};
use crate::error::{Error, Result};
use crate::qudit::{ChannelKind, ClassicalCode, QuantumCode, QuditString};
use std::collections::BTreeSet;

/// Resolved block layout for one `(q, n, flavor)` request.
#[derive(Clone, Debug)]
pub struct GcPlan {
    pub q: u8,
    pub n: usize,
    pub flavor: GcFlavor,
    /// Inner partitions per block, leading block first.
    pub blocks: Vec<InnerCodeEntry>,
    pub outer_len: usize,
    pub outer_property: OuterProperty,
    pub channel_scope: BTreeSet<ChannelKind>,
}

fn scope(kinds: &[ChannelKind]) -> BTreeSet<ChannelKind> {
    kinds.iter().copied().collect()
}

/// Picks inner blocks, outer length, and the outer property required for
/// the concatenation at these parameters.
pub fn gc_plan(q: u8, n: usize, flavor: GcFlavor) -> Result<GcPlan> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("length {n} too short")));
    }
    let len2 = inner_registry(q, 2, GcFlavor::Linear)?;
    let (blocks, outer_property, channel_scope) = if n % 2 == 0 {
        let property = match len2.induced {
            InducedChannel::Symmetric => OuterProperty::HammingD3,
            InducedChannel::Neighbor => OuterProperty::RqSingle,
        };
        (
            vec![len2.clone(); n / 2],
            property,
            scope(&[ChannelKind::Bosonic, ChannelKind::Cascade]),
        )
    } else {
        let (odd_m, chans): (usize, &[ChannelKind]) = match (q, flavor) {
            (4, GcFlavor::Linear) => (3, &[ChannelKind::Bosonic, ChannelKind::Cascade]),
            (q2, GcFlavor::Linear) if q2 >= 6 => {
                (3, &[ChannelKind::Bosonic, ChannelKind::Cascade])
            }
            (3, GcFlavor::Linear) => (5, &[ChannelKind::Bosonic]),
            (5, GcFlavor::Linear) => (5, &[ChannelKind::Bosonic]),
            (3, GcFlavor::Nonlinear) => (5, &[ChannelKind::Bosonic, ChannelKind::Cascade]),
            (5, GcFlavor::Nonlinear) => (5, &[ChannelKind::Bosonic]),
            (5, GcFlavor::NonlinearLen3) => (3, &[ChannelKind::Bosonic]),
            _ => {
                return Err(Error::Unsupported(format!(
                    "no odd-length construction for q = {q}, flavor = {flavor}"
                )));
            }
        };
        if n < odd_m {
            return Err(Error::InvalidParameter(format!(
                "length {n} shorter than the length-{odd_m} inner block"
            )));
        }
        let odd = inner_registry(q, odd_m, flavor)?;
        let mut blocks = vec![odd];
        blocks.extend(std::iter::repeat(len2).take((n - odd_m) / 2));
        // one symbol for the odd block, Hamming distance 3 across blocks
        (blocks, OuterProperty::HammingD3, scope(chans))
    };
    let outer_len = blocks.len();
    Ok(GcPlan {
        q,
        n,
        flavor,
        blocks,
        outer_len,
        outer_property,
        channel_scope,
    })
}

/// Assembles the self-complementary classical code for the plan and outer
/// code, with its transversal populated.
pub fn gc_classical(q: u8, n: usize, outer: &OuterCodeEntry, flavor: GcFlavor) -> Result<ClassicalCode> {
    let plan = gc_plan(q, n, flavor)?;
    if outer.code.q() != q || outer.code.n() != plan.outer_len {
        return Err(Error::DimensionMismatch(format!(
            "outer code is (q={}, n={}), plan wants (q={q}, n={})",
            outer.code.q(),
            outer.code.n(),
            plan.outer_len
        )));
    }
    if outer.property != plan.outer_property {
        return Err(Error::Construction(format!(
            "outer code verified for {}, construction requires {}",
            outer.property, plan.outer_property
        )));
    }
    if !super::outer::property_holds(&outer.code, plan.outer_property) {
        return Err(Error::Construction(format!(
            "outer code fails {}",
            plan.outer_property
        )));
    }

    let mut words: BTreeSet<QuditString> = BTreeSet::new();
    for symbol_word in outer.code.iter() {
        let members: Vec<&ClassicalCode> = symbol_word
            .digits()
            .iter()
            .zip(&plan.blocks)
            .map(|(&s, entry)| &entry.codes[s as usize])
            .collect();
        let mut partial: Vec<Vec<u8>> = vec![Vec::new()];
        for member in members {
            let mut next = Vec::with_capacity(partial.len() * member.len());
            for prefix in &partial {
                for w in member.iter() {
                    let mut ext = prefix.clone();
                    ext.extend_from_slice(w.digits());
                    next.push(ext);
                }
            }
            partial = next;
        }
        for digits in partial {
            words.insert(QuditString::new(q, digits)?);
        }
    }

    let block_product: usize = plan.blocks.iter().map(|b| b.codes[0].len()).product();
    let expected = outer.code.len() * block_product;
    if words.len() != expected {
        return Err(Error::Construction(format!(
            "assembled {} words, expected {expected}",
            words.len()
        )));
    }
    let code = ClassicalCode::new(q, n, words)?;
    if !code.is_shift_closed() {
        return Err(Error::Construction(
            "assembled code is not self-complementary".into(),
        ));
    }
    code.orbit_transversal()
}

/// Classical assembly followed by the lift.
pub fn gc_construct(
    q: u8,
    n: usize,
    outer: &OuterCodeEntry,
    flavor: GcFlavor,
) -> Result<QuantumCode> {
    let plan = gc_plan(q, n, flavor)?;
    let classical = gc_classical(q, n, outer, flavor)?;
    lift(
        &classical,
        1,
        plan.channel_scope,
        format!("gc q={q} n={n} {flavor} outer K={}", outer.code.len()),
    )
}

/// Convenience: plan, pull the outer code from the registry, assemble, lift.
pub fn gc_from_registry(q: u8, n: usize, flavor: GcFlavor) -> Result<QuantumCode> {
    let plan = gc_plan(q, n, flavor)?;
    let outer = outer_registry(q, plan.outer_len, plan.outer_property)?;
    gc_construct(q, n, &outer, flavor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics;
    use crate::verifier::verify_single_ad_combinatorial;

    #[test]
    fn ternary_n6_dimension_27() {
        let plan = gc_plan(3, 6, GcFlavor::Linear).unwrap();
        assert_eq!(plan.outer_len, 3);
        let outer = outer_registry(3, 3, OuterProperty::HammingD3).unwrap();
        let classical = gc_classical(3, 6, &outer, GcFlavor::Linear).unwrap();
        assert_eq!(classical.len(), 81);
        assert_eq!(classical.tilde().unwrap().len(), 27);
        assert!(verify_single_ad_combinatorial(&classical).unwrap());
        let code = gc_construct(3, 6, &outer, GcFlavor::Linear).unwrap();
        assert_eq!(code.dimension(), 27);
        assert!(code.channel_scope.contains(&ChannelKind::Cascade));
    }

    #[test]
    fn ternary_n5_nonlinear_dimension_11() {
        let outer = outer_registry(3, 1, OuterProperty::HammingD3).unwrap();
        let code = gc_construct(3, 5, &outer, GcFlavor::Nonlinear).unwrap();
        assert_eq!(code.dimension(), 11);
    }

    #[test]
    fn ternary_n5_linear_dimension_9() {
        let outer = outer_registry(3, 1, OuterProperty::HammingD3).unwrap();
        let code = gc_construct(3, 5, &outer, GcFlavor::Linear).unwrap();
        assert_eq!(code.dimension(), 9);
    }

    #[test]
    fn q4_n7_dimension_256() {
        let outer = outer_registry(4, 3, OuterProperty::HammingD3).unwrap();
        let classical = gc_classical(4, 7, &outer, GcFlavor::Linear).unwrap();
        assert_eq!(classical.len(), 1024);
        assert!(metrics::is_t_code(&classical, 1));
        let code = gc_construct(4, 7, &outer, GcFlavor::Linear).unwrap();
        assert_eq!(code.dimension(), 256);
    }

    #[test]
    fn outer_property_mismatch_is_reported() {
        let outer = outer_registry(3, 3, OuterProperty::RqSingle).unwrap();
        let err = gc_classical(3, 6, &outer, GcFlavor::Linear).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("hamming_d3"), "got: {msg}");
    }

    #[test]
    fn classical_codes_are_1_codes_at_desk_scale() {
        for (q, n, flavor) in [
            (3, 4, GcFlavor::Linear),
            (3, 6, GcFlavor::Linear),
            (3, 5, GcFlavor::Nonlinear),
            (3, 7, GcFlavor::Nonlinear),
            (4, 4, GcFlavor::Linear),
            (5, 3, GcFlavor::NonlinearLen3),
            (6, 3, GcFlavor::Linear),
        ] {
            let plan = gc_plan(q, n, flavor).unwrap();
            let outer = outer_registry(q, plan.outer_len, plan.outer_property).unwrap();
            let c = gc_classical(q, n, &outer, flavor).unwrap();
            assert!(metrics::is_t_code(&c, 1), "q={q} n={n} {flavor}");
            assert!(metrics::is_self_complementary(&c));
        }
    }
}
