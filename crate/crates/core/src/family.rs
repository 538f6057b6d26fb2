//! Per-instance data shared by the L-function and the statistics: the place
//! set P_q(a) and the Kloosterman value at every place.

use rayon::prelude::*;

use crate::curve_oracle::CurveParams;
use crate::error::Result;
use crate::kloosterman::{kln_with, AdditiveCharacter, KloostermanValue};
use crate::places::{place_set, PlaceSet};

#[derive(Clone, Debug)]
pub struct Family {
    pub params: CurveParams,
    pub places: PlaceSet,
    /// Kln_γ(v), in the order of `places.places`.
    pub klns: Vec<KloostermanValue>,
    pub character: AdditiveCharacter,
    pub embedding: u64,
}

impl Family {
    pub fn new(params: &CurveParams) -> Result<Family> {
        Family::with_character(params, AdditiveCharacter::default(), 1)
    }

    /// Build with the character ψ_b and the complex embedding ζ ↦ e^{2πic/p}.
    pub fn with_character(params: &CurveParams, character: AdditiveCharacter, embedding: u64) -> Result<Family> {
        let places = place_set(&params.base(), params.a, params.limits.enumeration_cap)?;
        let klns = places
            .places
            .par_iter()
            .map(|v| kln_with(v, params.gamma, character, embedding))
            .collect::<Result<Vec<_>>>()?;
        Ok(Family {
            params: params.clone(),
            places,
            klns,
            character,
            embedding,
        })
    }

    pub fn rank(&self) -> usize {
        self.places.len()
    }
}
