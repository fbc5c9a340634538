// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

//! Configuration, sweeps, table output and canned figure data on top of
//! [`wqed_core`].

pub mod config;
pub mod output;
pub mod presets;
pub mod sweep;
pub mod verify;

pub use config::{ConfigError, Observable, RunConfig};
pub use sweep::{run_point, run_sweep, SweepResult};
