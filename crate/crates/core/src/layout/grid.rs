//! Global View grid: one column per timeslice, one row per community, rows
//! chosen to keep evolution links short.
//!
//! Columns are unit-spaced, rows are unit-spaced, so a link between rows `a`
//! and `b` of adjacent columns has length `sqrt(1 + (a - b)^2)`. Every column
//! has the same capacity (the largest community count of any slice).

use serde::{Deserialize, Serialize};

use crate::community::EvolutionLink;
use crate::model::CommunityKey;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub key: CommunityKey,
    pub row: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridColumn {
    pub slice: usize,
    /// Sorted by row.
    pub cells: Vec<GridCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridLink {
    pub from: CommunityKey,
    pub to: CommunityKey,
    pub from_row: usize,
    pub to_row: usize,
    pub thickness: usize,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridLayout {
    pub capacity: usize,
    pub columns: Vec<GridColumn>,
    pub links: Vec<GridLink>,
    pub total_length: f64,
}

impl GridLayout {
    pub fn row_of(&self, key: CommunityKey) -> Option<usize> {
        self.columns
            .get(key.slice.checked_sub(1)?)?
            .cells
            .iter()
            .find(|c| c.key == key)
            .map(|c| c.row)
    }
}

pub fn link_length(from_row: usize, to_row: usize) -> f64 {
    let d = from_row as f64 - to_row as f64;
    (1.0 + d * d).sqrt()
}

struct Grid<'a> {
    capacity: usize,
    cols: Vec<Vec<Option<CommunityKey>>>,
    /// Communities of each column in local id order; `rows` is parallel.
    per: Vec<Vec<CommunityKey>>,
    rows: Vec<Vec<Option<usize>>>,
    links: &'a [EvolutionLink],
    /// Indices of the links touching each column.
    touching: Vec<Vec<usize>>,
}

impl<'a> Grid<'a> {
    fn new(slice_count: usize, keys: &[CommunityKey], links: &'a [EvolutionLink]) -> Grid<'a> {
        let mut per: Vec<Vec<CommunityKey>> = vec![Vec::new(); slice_count];
        for &k in keys {
            per[k.slice - 1].push(k);
        }
        for col in &mut per {
            col.sort_by_key(|k| k.local);
        }
        let capacity = per.iter().map(Vec::len).max().unwrap_or(0);
        let mut touching = vec![Vec::new(); slice_count];
        for (i, l) in links.iter().enumerate() {
            touching[l.from.slice - 1].push(i);
            touching[l.to.slice - 1].push(i);
        }
        Grid {
            capacity,
            cols: vec![vec![None; capacity]; slice_count],
            rows: per.iter().map(|c| vec![None; c.len()]).collect(),
            per,
            links,
            touching,
        }
    }

    fn slot(&self, key: CommunityKey) -> (usize, usize) {
        let col = key.slice - 1;
        let i = self.per[col]
            .binary_search_by_key(&key.local, |k| k.local)
            .expect("link endpoints are listed communities");
        (col, i)
    }

    fn row(&self, key: CommunityKey) -> Option<usize> {
        let (c, i) = self.slot(key);
        self.rows[c][i]
    }

    fn put(&mut self, key: CommunityKey, row: usize) {
        let (c, i) = self.slot(key);
        self.cols[c][row] = Some(key);
        self.rows[c][i] = Some(row);
    }

    fn length_touching(&self, col: usize) -> f64 {
        self.touching[col]
            .iter()
            .map(|&i| {
                let l = &self.links[i];
                link_length(self.row(l.from).unwrap(), self.row(l.to).unwrap())
            })
            .sum()
    }

    fn swap(&mut self, col: usize, a: usize, b: usize) {
        self.cols[col].swap(a, b);
        for row in [a, b] {
            if let Some(k) = self.cols[col][row] {
                let (c, i) = self.slot(k);
                self.rows[c][i] = Some(row);
            }
        }
    }

    fn finish(self) -> GridLayout {
        let columns: Vec<GridColumn> = self
            .cols
            .iter()
            .enumerate()
            .map(|(i, col)| GridColumn {
                slice: i + 1,
                cells: col
                    .iter()
                    .enumerate()
                    .filter_map(|(row, k)| k.map(|key| GridCell { key, row }))
                    .collect(),
            })
            .collect();
        let links: Vec<GridLink> = self
            .links
            .iter()
            .map(|l| {
                let (from_row, to_row) = (self.row(l.from).unwrap(), self.row(l.to).unwrap());
                GridLink {
                    from: l.from,
                    to: l.to,
                    from_row,
                    to_row,
                    thickness: l.overlap,
                    length: link_length(from_row, to_row),
                }
            })
            .collect();
        let total_length = links.iter().map(|l| l.length).sum();
        GridLayout {
            capacity: self.capacity,
            columns,
            links,
            total_length,
        }
    }
}

/// Every column in appearance (local id) order; the reference layout.
pub fn appearance_layout(
    slice_count: usize,
    keys: &[CommunityKey],
    links: &[EvolutionLink],
) -> GridLayout {
    let mut grid = Grid::new(slice_count, keys, links);
    for c in 0..slice_count {
        for row in 0..grid.per[c].len() {
            grid.put(grid.per[c][row], row);
        }
    }
    grid.finish()
}

/// Link length reduction layout.
///
/// Column 1 is in appearance order. In each later column, "from" communities
/// are visited in row order and each of their "to" communities takes the free
/// row nearest the "from" row (ties to the smaller row); communities not
/// reached by a link fill the remaining rows in appearance order. Then, for
/// each merge, the "from" farther from the shared "to" trades places with the
/// previous-column cell (empty or holding a community with no link into this
/// column) nearest the closer "from", provided the total length of the links
/// touching that column does not grow.
///
/// The greedy placement is column-local, so on rare inputs it ends up longer
/// than plain appearance order; [`global_grid_positions`] guards against that.
pub fn heuristic_grid_positions(
    slice_count: usize,
    keys: &[CommunityKey],
    links: &[EvolutionLink],
) -> GridLayout {
    heuristic(slice_count, keys, links, true)
}

/// [`heuristic_grid_positions`] without the merge swap step.
pub fn greedy_grid_positions(
    slice_count: usize,
    keys: &[CommunityKey],
    links: &[EvolutionLink],
) -> GridLayout {
    heuristic(slice_count, keys, links, false)
}

fn heuristic(slice_count: usize, keys: &[CommunityKey], links: &[EvolutionLink], merge_swap: bool) -> GridLayout {
    let mut grid = Grid::new(slice_count, keys, links);
    if slice_count == 0 {
        return grid.finish();
    }
    let capacity = grid.capacity;

    let mut outgoing: Vec<Vec<Vec<CommunityKey>>> = grid.per.iter().map(|c| vec![Vec::new(); c.len()]).collect();
    let mut incoming = outgoing.clone();
    for l in links {
        let (c, i) = grid.slot(l.from);
        outgoing[c][i].push(l.to);
        let (c, i) = grid.slot(l.to);
        incoming[c][i].push(l.from);
    }

    for row in 0..grid.per[0].len() {
        grid.put(grid.per[0][row], row);
    }

    for x in 1..slice_count {
        for from_row in 0..capacity {
            let Some(from) = grid.cols[x - 1][from_row] else {
                continue;
            };
            let (c, i) = grid.slot(from);
            for &to in &outgoing[c][i] {
                if grid.row(to).is_some() {
                    continue;
                }
                let row = nearest_free(&grid.cols[x], from_row);
                grid.put(to, row);
            }
        }
        for i in 0..grid.per[x].len() {
            if grid.rows[x][i].is_none() {
                let row = nearest_free(&grid.cols[x], 0);
                grid.put(grid.per[x][i], row);
            }
        }
        if !merge_swap {
            continue;
        }

        for to_row in 0..capacity {
            let Some(to) = grid.cols[x][to_row] else {
                continue;
            };
            let (c, i) = grid.slot(to);
            let froms = &incoming[c][i];
            if froms.len() != 2 {
                continue;
            }
            let (r0, r1) = (grid.row(froms[0]).unwrap(), grid.row(froms[1]).unwrap());
            let (d0, d1) = (r0.abs_diff(to_row), r1.abs_diff(to_row));
            if d0 == d1 {
                continue;
            }
            let (closer, farther) = if d0 < d1 { (r0, r1) } else { (r1, r0) };
            let candidate = (0..capacity)
                .filter(|&r| r != closer && r != farther)
                .filter(|&r| match grid.cols[x - 1][r] {
                    None => true,
                    Some(k) => {
                        let (c, i) = grid.slot(k);
                        outgoing[c][i].is_empty()
                    }
                })
                .min_by_key(|&r| (r.abs_diff(closer), r.abs_diff(to_row), r));
            let Some(target) = candidate else {
                continue;
            };
            let before = grid.length_touching(x - 1);
            grid.swap(x - 1, farther, target);
            if grid.length_touching(x - 1) > before + 1e-12 {
                grid.swap(x - 1, farther, target);
            }
        }
    }
    grid.finish()
}

/// The heuristic layout, or appearance order when that is strictly shorter.
pub fn global_grid_positions(
    slice_count: usize,
    keys: &[CommunityKey],
    links: &[EvolutionLink],
) -> GridLayout {
    let heuristic = heuristic_grid_positions(slice_count, keys, links);
    let baseline = appearance_layout(slice_count, keys, links);
    if baseline.total_length < heuristic.total_length - 1e-9 {
        baseline
    } else {
        heuristic
    }
}

fn nearest_free(col: &[Option<CommunityKey>], row: usize) -> usize {
    (0..col.len())
        .filter(|&r| col[r].is_none())
        .min_by_key(|&r| (r.abs_diff(row), r))
        .expect("column capacity covers every community")
}
