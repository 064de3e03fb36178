"""Graphviz DOT text for polytope graphs, with optional highlighted edges."""


def graph_to_dot(graph, name="G", highlight=None, colors=None, labels=True):
    """``highlight`` is an EdgeSet (or edge-bit int) drawn bold red.

    ``colors`` optionally maps vertex index to 0/1 for a 2-colouring.
    """
    bits = getattr(highlight, "bits", highlight) or 0
    lines = [f'graph "{name}" {{', "  node [shape=circle];"]
    for v in range(graph.vertex_count):
        attrs = []
        if labels:
            attrs.append(f'label="{graph.vertex_labels[v]}"')
        if colors is not None:
            attrs.append('style=filled, fillcolor="%s"' % ("white", "gray")[colors[v]])
        lines.append(f"  {v} [{', '.join(attrs)}];" if attrs else f"  {v};")
    for i, (u, v) in enumerate(graph.edges):
        if bits >> i & 1:
            lines.append(f"  {u} -- {v} [color=red, penwidth=3];")
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
