//! Certificate payloads and their search-free checks.

use pathchrom_core::decomposition::bag_colorings;
use pathchrom_core::{
    path_decomposition_from_enumeration, Decomposition, Enumeration, Graph, VertexSet,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// An enumeration plus a colouring of each bag of its path decomposition,
/// listed in bag-member order. Checking it needs no search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColoredOrder {
    pub order: Vec<usize>,
    pub bag_colorings: Vec<Vec<usize>>,
}

pub fn colored_order(g: &Graph, order: &Enumeration) -> pathchrom_core::Result<ColoredOrder> {
    let p = path_decomposition_from_enumeration(g, order)?;
    Ok(ColoredOrder {
        order: order.as_slice().to_vec(),
        bag_colorings: colorings_on(g, &p)?,
    })
}

pub fn colorings_on(g: &Graph, d: &dyn Decomposition) -> pathchrom_core::Result<Vec<Vec<usize>>> {
    Ok(bag_colorings(g, d)?
        .iter()
        .zip(d.bags())
        .map(|(c, &bag)| c.colors_of(bag))
        .collect())
}

/// Checks every colouring is proper on its bag; returns the most colours any
/// bag uses.
pub fn check_bag_colorings(
    g: &Graph,
    bags: &[VertexSet],
    colorings: &[Vec<usize>],
) -> Result<usize, String> {
    ensure(bags.len() == colorings.len(), "one colouring per bag")?;
    let mut colors = vec![usize::MAX; g.order()];
    let mut most = 0;
    for (i, (&bag, coloring)) in bags.iter().zip(colorings).enumerate() {
        ensure(
            coloring.len() == bag.len(),
            format!("bag {i}: colouring length"),
        )?;
        for (v, &c) in bag.iter().zip(coloring) {
            colors[v] = c;
        }
        for (u, v) in g.edges() {
            if bag.contains(u) && bag.contains(v) && colors[u] == colors[v] {
                return Err(format!("bag {i}: edge {u}-{v} is monochromatic"));
            }
        }
        let mut used: Vec<usize> = coloring.clone();
        used.sort_unstable();
        used.dedup();
        most = most.max(used.len());
    }
    Ok(most)
}

/// Rebuilds the path decomposition of `c.order` and checks its colourings;
/// returns the most colours used by a bag.
pub fn check_colored_order(g: &Graph, c: &ColoredOrder) -> Result<usize, String> {
    let order = Enumeration::new(c.order.clone()).map_err(|e| e.to_string())?;
    let p = path_decomposition_from_enumeration(g, &order).map_err(|e| e.to_string())?;
    check_bag_colorings(g, p.bags(), &c.bag_colorings)
}

pub fn field<T: DeserializeOwned>(cert: &Value, name: &str) -> Result<T, String> {
    let raw = cert
        .get(name)
        .ok_or_else(|| format!("certificate lacks `{name}`"))?;
    serde_json::from_value(raw.clone()).map_err(|e| format!("certificate field `{name}`: {e}"))
}

pub fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

pub fn core<T>(r: pathchrom_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}
