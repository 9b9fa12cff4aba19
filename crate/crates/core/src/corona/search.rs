use std::cell::Cell;

use super::board::Board;
use super::{CoronaError, PlacementModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Flow {
    Continue,
    Stop,
}

/// Depth-first filling of open arcs, always at the canonical anchor.
pub(crate) struct Searcher<'n> {
    pub reflections: bool,
    /// Also refuse placements leaving an unfillable arc at points outside the
    /// region (such a point would be a dead spot for the next layer).
    pub prune_outer: bool,
    /// Close only this point instead of the whole region boundary.
    pub only: Option<usize>,
    pub budget: u64,
    pub nodes: &'n Cell<u64>,
}

pub(crate) type OnDone<'f> = dyn FnMut(&Board) -> Result<Flow, CoronaError> + 'f;

impl Searcher<'_> {
    pub fn run(&self, board: &mut Board, on_done: &mut OnDone) -> Result<Flow, CoronaError> {
        if self.only.is_none() && board.must.iter().any(|&(_, v)| !board.vertex_ok(v)) {
            return Ok(Flow::Continue);
        }
        self.dfs(board, on_done)
    }

    fn dfs(&self, board: &mut Board, on_done: &mut OnDone) -> Result<Flow, CoronaError> {
        let n = self.nodes.get() + 1;
        self.nodes.set(n);
        if n > self.budget {
            return Err(CoronaError::BudgetExceeded { budget: self.budget });
        }
        let anchor = match self.only {
            Some(vid) => board
                .arcs(vid)
                .and_then(|a| a.first().copied())
                .map(|a| (vid, a)),
            None => board.anchor(),
        };
        let Some((vid, arc)) = anchor else {
            return on_done(board);
        };
        let allow_t = board.mode == PlacementModel::EecPlusCollinear;
        for pose in board.candidates(vid, &arc, self.reflections) {
            let tile = board.tile_from_pose(pose);
            if !board.fits(&tile) {
                continue;
            }
            let Some(affected) = board.commit(pose, allow_t) else {
                continue;
            };
            let ok = affected.iter().all(|&a| {
                let check = match self.only {
                    Some(o) => a == o,
                    None => board.is_must(a) || self.prune_outer,
                };
                !check || board.vertex_ok(a)
            });
            if ok && self.dfs(board, on_done)? == Flow::Stop {
                board.pop();
                return Ok(Flow::Stop);
            }
            board.pop();
        }
        Ok(Flow::Continue)
    }
}
