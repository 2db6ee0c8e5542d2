//! Lower bounds as executable objects: adaptive item-issuing strategies
//! that watch the algorithm's packing, and static worst-case families
//! carrying certificate packings for their optima.

mod adaptive;
mod families;

pub use adaptive::{AbsK3, AbsK4Plus, AdaptiveAdversary, DuelOutcome, run_duel};
pub use families::{
    default_delta_mid, default_eps_mid, default_eps_small, gen_batches, gen_ff_killer_large,
    gen_ff_killer_mid, gen_ff_killer_small, lb_value, prior_lb, GeneratedFamily,
};
