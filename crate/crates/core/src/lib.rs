pub mod gait_search;
pub mod gait_spec;
pub mod phase_math;
pub mod reward;
pub mod toy_env;
