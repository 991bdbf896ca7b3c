use std::collections::{BTreeMap, BTreeSet};

use super::EvolutionEvent;
use crate::community::{EvolutionLink, SizeChange};
use crate::model::{Community, CommunityKey};

/// Event set per community. A community without incoming links is born, one
/// without outgoing links dies; every outgoing link contributes its size
/// change; two retained outgoing links make a split and two incoming a merge.
pub fn classify_evolution(
    communities: &[Community],
    links: &[EvolutionLink],
) -> BTreeMap<CommunityKey, BTreeSet<EvolutionEvent>> {
    let mut incoming: BTreeMap<CommunityKey, usize> = BTreeMap::new();
    let mut outgoing: BTreeMap<CommunityKey, Vec<&EvolutionLink>> = BTreeMap::new();
    for l in links {
        *incoming.entry(l.to).or_default() += 1;
        outgoing.entry(l.from).or_default().push(l);
    }

    communities
        .iter()
        .map(|c| {
            let mut events = BTreeSet::new();
            let inc = incoming.get(&c.key).copied().unwrap_or(0);
            let out = outgoing.get(&c.key).map(Vec::as_slice).unwrap_or(&[]);
            if inc == 0 {
                events.insert(EvolutionEvent::Birth);
            }
            if out.is_empty() {
                events.insert(EvolutionEvent::Death);
            }
            for l in out {
                events.insert(match l.change {
                    SizeChange::Grow => EvolutionEvent::Grow,
                    SizeChange::Contract => EvolutionEvent::Contract,
                    SizeChange::Preserve => EvolutionEvent::Preserve,
                });
            }
            if out.len() >= 2 && out.iter().all(|l| l.split_branch) {
                events.insert(EvolutionEvent::Split);
            }
            if inc >= 2 {
                events.insert(EvolutionEvent::Merge);
            }
            (c.key, events)
        })
        .collect()
}
