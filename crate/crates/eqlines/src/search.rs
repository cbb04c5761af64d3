//! Multi-threaded fiducial search.
//!
//! Restarts run in batches of `threads`; outcomes are folded in restart order,
//! so the result does not depend on the thread count.

use std::thread;

use eqlines_core::wh::{evaluate_restart, FramePotential, RestartOutcome, SearchOptions, SearchOutcome};
use eqlines_core::Result;

pub fn search_parallel(opts: &SearchOptions, threads: usize) -> Result<SearchOutcome> {
    let potential = FramePotential::new(opts.group)?;
    let threads = threads.max(1);
    let restarts = opts.restarts.max(1);
    let mut outcomes: Vec<RestartOutcome> = Vec::with_capacity(restarts);
    let mut start = 0;
    while start < restarts {
        let end = (start + threads).min(restarts);
        let batch: Vec<Result<RestartOutcome>> = if end - start == 1 {
            vec![evaluate_restart(&potential, opts, start)]
        } else {
            thread::scope(|s| {
                let handles: Vec<_> = (start..end)
                    .map(|r| {
                        let potential = &potential;
                        s.spawn(move || evaluate_restart(potential, opts, r))
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("search thread panicked"))
                    .collect()
            })
        };
        for o in batch {
            outcomes.push(o?);
        }
        if outcomes.iter().any(|o| o.certificate.pass) {
            break;
        }
        start = end;
    }
    Ok(SearchOutcome::from_restarts(outcomes).expect("at least one restart"))
}
