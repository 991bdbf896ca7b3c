//! Geometry for the Global View grid and the per-community views.

mod grid;
mod spring;
mod supernode;
mod tam;

pub use grid::{
    appearance_layout, global_grid_positions, greedy_grid_positions, heuristic_grid_positions, link_length, GridCell, GridColumn, GridLayout, GridLink,
};
pub use spring::{spring_layout, DEFAULT_ITERATIONS};
pub use supernode::{summarize_supernodes, SuperGraph, Superedge, Supernode, DEFAULT_SUPERNODE_THRESHOLD};
pub use tam::{tam_rows, Tam, TamRow};
