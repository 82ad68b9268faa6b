use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{connected_components, imbalanced_vertices, EdgeMultiset, WeightedMultigraph};

/// A multigraph together with its required edge multiset R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RppInstance {
    graph: WeightedMultigraph,
    required: EdgeMultiset,
    b: usize,
    c: usize,
}

impl RppInstance {
    pub fn new(graph: WeightedMultigraph, required: EdgeMultiset) -> Result<Self> {
        if let Some(e) = graph.edges().first_missing(&required) {
            return Err(Error::RequiredNotInGraph(e));
        }
        let b = imbalanced_vertices(&required).len();
        let c = connected_components(&required).count();
        Ok(RppInstance {
            graph,
            required,
            b,
            c,
        })
    }

    pub fn graph(&self) -> &WeightedMultigraph {
        &self.graph
    }

    pub fn required(&self) -> &EdgeMultiset {
        &self.required
    }

    /// Number of odd-degree vertices of G⟨R⟩.
    pub fn b(&self) -> usize {
        self.b
    }

    /// Number of components of G⟨R⟩.
    pub fn c(&self) -> usize {
        self.c
    }

    /// V(R), ascending.
    pub fn required_vertices(&self) -> Vec<usize> {
        self.required.vertices()
    }
}
