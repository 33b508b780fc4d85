//! Two-party, two-input, two-output nonlocality.

mod games;
mod membership;
mod quantum;
pub mod simplex;
mod table;

pub use games::{
    ghz_paradox, lv_outcome, pr_clone_distribution, pr_clone_signaling, same_input_game,
    singlet_lv_model, GameResult, GhzReport, PrCloneReport, GHZ_STRINGS, GHZ_TARGETS,
    SEARCH_LIMIT,
};
pub use membership::{
    convex_weights, local_membership, lp_feasible, max_violation, mix, vertices,
    MembershipResult, FACET_TOL, LP_TOL, REPRODUCTION_TOL,
};
pub use quantum::{
    behavior_from_state, chsh_operator, chsh_value, detected_chsh, detection_loophole,
    detection_threshold, optimal_chsh_pure, schmidt_state, standard_settings, tlm_criterion,
    tsirelson_check, werner_chsh_threshold, ChshSettings, DetectionReport, OptimalChsh,
    TlmResult, TsirelsonReport, IDEAL_DETECTION,
};
pub use table::{
    behavior_to_table, ch_symmetries, deterministic_behavior, facet_values, functional_value,
    me_table, pr_box, pr_boxes, table_to_behavior, Behavior, BellFunctional,
    DeterministicStrategy, GeneralBehavior, NsTable, Response, NS_TOL,
};
