use super::OrderedBratteliDiagram;

/// Graphviz source with one rank per level and edge orders as labels.
pub fn emit_dot(d: &OrderedBratteliDiagram) -> String {
    let id = |k: usize, v: usize| format!("\"{}:{}\"", k, d.levels()[k][v]);
    let mut out = String::from("digraph bratteli {\n  rankdir=TB;\n  node [shape=circle];\n");
    for (k, level) in d.levels().iter().enumerate() {
        let nodes: Vec<String> = (0..level.len()).map(|v| format!("{} [label=\"{}\"]", id(k, v), level[v])).collect();
        out.push_str(&format!("  {{ rank=same; {}; }}\n", nodes.join("; ")));
    }
    for k in 1..=d.depth() {
        for e in d.edges(k) {
            out.push_str(&format!("  {} -> {} [label=\"{}\"];\n", id(k, e.source), id(k - 1, e.target), e.order));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn odometer_dot() {
        let dot = emit_dot(&fixtures::odometer(3));
        assert_eq!(dot.matches("rank=same").count(), 4);
        assert_eq!(dot.matches(" -> ").count(), 6);
        assert_eq!(dot.matches("label=\"1\"];").count(), 3);
        assert_eq!(dot, emit_dot(&fixtures::odometer(3)));
    }

    #[test]
    fn example1_bundle() {
        let dot = emit_dot(&fixtures::example1());
        assert_eq!(dot.matches("\"2:w2\" -> \"1:v1\"").count(), 2);
        assert_eq!(dot.matches("\"2:w2\" -> \"1:w1\"").count(), 1);
    }
}
