//! The pants graph of the once-punctured torus: the Farey graph, truncated
//! to the box |p| <= max_twist, q <= max_twist.

use std::marker::PhantomData;

use super::search::MoveGraph;
use super::Cutoff;
use crate::error::Result;
use crate::farey::{neighbors_in_box, Slope};
use crate::scalar::{from_i64, Integral};

pub struct FareyGraph<T>(PhantomData<T>);

impl<T> FareyGraph<T> {
    pub fn new() -> Self {
        FareyGraph(PhantomData)
    }
}

impl<T> Default for FareyGraph<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Integral> MoveGraph for FareyGraph<T> {
    type Node = Slope<T>;
    type Key = Slope<T>;

    fn key(&self, node: &Slope<T>) -> Slope<T> {
        node.clone()
    }

    fn adjacent(&self, node: &Slope<T>, cutoff: &Cutoff) -> Result<Vec<Slope<T>>> {
        Ok(neighbors_in_box(node, &from_i64(i64::from(cutoff.max_twist))))
    }
}
