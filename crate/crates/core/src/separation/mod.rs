// Copyright 2026 the cmpopt Authors
// SPDX-License-Identifier: Apache-2.0

//! Separation backends for GSL.
//!
//! Given the current subspace `A` and representatives `r_1..r_l`, a feasible
//! `y` lies in no bucket iff `W y` avoids `{W r_i}`, where the rows of `W`
//! span the integer kernel of the basis rows of `A`.

pub mod encode;
pub mod lattice;
pub mod linear;
pub mod modular;
pub mod powerset;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use encode::scalar_encode;
pub use lattice::{integer_nullspace, IntegerMatrix, LatticeBasis};
pub use linear::{
    basis_cost_polynomial, brute_force_cost_coefficients, cost_of, matroid_separate_plain,
    max_basis_cost, witness_basis, CostPolynomial, LinearMatroid, DEFAULT_PLAIN_CAP,
};
pub use modular::{matroid_separate_modp, MatroidSeparation, ModpConfig, VectorCosts};
pub use powerset::{separate_powerset, PowersetSeparator};

use crate::error::Result;
use crate::gsl::{GslState, Separator};

/// Which determinant-polynomial backend a matroid separator uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Plain,
    Modp,
    /// Plain when the largest basis cost is at most [`AUTO_PLAIN_LIMIT`].
    #[default]
    Auto,
}

/// Largest basis cost for which [`Backend::Auto`] interpolates exactly; above
/// it the modular backend is faster.
pub const AUTO_PLAIN_LIMIT: u64 = 32;

/// [`Separator`] for the bases of a linear matroid.
pub struct MatroidSeparator {
    matroid: LinearMatroid,
    backend: Backend,
    plain_cap: u64,
    cfg: ModpConfig,
    rng: ChaCha8Rng,
    plain_calls: usize,
    modp_calls: usize,
}

impl MatroidSeparator {
    pub fn new(matroid: LinearMatroid, backend: Backend, seed: u64) -> Self {
        Self {
            matroid,
            backend,
            plain_cap: DEFAULT_PLAIN_CAP,
            cfg: ModpConfig::default(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            plain_calls: 0,
            modp_calls: 0,
        }
    }

    pub fn with_plain_cap(mut self, cap: u64) -> Self {
        self.plain_cap = cap;
        self
    }

    pub fn with_config(mut self, cfg: ModpConfig) -> Self {
        self.cfg = cfg;
        self
    }

    pub fn matroid(&self) -> &LinearMatroid {
        &self.matroid
    }

    /// Separation calls answered by each backend, `(plain, modp)`.
    pub fn backend_calls(&self) -> (usize, usize) {
        (self.plain_calls, self.modp_calls)
    }
}

impl Separator for MatroidSeparator {
    fn first_point(&mut self) -> Result<Option<Vec<usize>>> {
        Ok(Some(self.matroid.lex_first_basis()))
    }

    fn next_point(&mut self, state: &GslState) -> Result<Option<Vec<usize>>> {
        let n = self.matroid.len();
        let w = integer_nullspace(&IntegerMatrix::from_i64(n, state.basis()));
        let m = w.max_abs();
        let cols = w.columns();
        let costs: Vec<BigInt> = cols
            .iter()
            .map(|c| scalar_encode(c, n, &m))
            .collect::<Result<_>>()?;
        let reps = state.representatives();
        let z: Vec<BigInt> = reps.iter().map(|r| cost_of(&costs, r)).collect();
        let plain = match self.backend {
            Backend::Plain => true,
            Backend::Modp => false,
            Backend::Auto => {
                max_basis_cost(&costs, self.matroid.rank())
                    <= BigInt::from(AUTO_PLAIN_LIMIT.min(self.plain_cap))
            }
        };
        if plain {
            self.plain_calls += 1;
            return match matroid_separate_plain(&self.matroid, &costs, &z, self.plain_cap)? {
                Some(t) => witness_basis(&self.matroid, &costs, &t, self.plain_cap).map(Some),
                None => Ok(None),
            };
        }
        self.modp_calls += 1;
        let vc = VectorCosts {
            cols,
            z: reps.iter().map(|r| w.image(r)).collect(),
        };
        match matroid_separate_modp(
            &self.matroid,
            &costs,
            &z,
            Some(&vc),
            self.cfg,
            &mut self.rng,
        )? {
            MatroidSeparation::Found { basis, .. } => Ok(Some(basis)),
            MatroidSeparation::Exhausted => Ok(None),
        }
    }
}
