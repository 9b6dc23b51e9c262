"""GEXF 1.2 export for mention and coordination graphs.

Layout and rendering are delegated to Gephi; this writer only guarantees
a valid, deterministic document: nodes and edges ordered by name, with
optional per-node community id, centrality and overall bot score
attributes and per-edge weights.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from xml.dom import minidom

from .errors import DataError
from .graphs import WeightedGraph

__all__ = ["write_gexf", "gexf_document"]

_NS = "http://www.gexf.net/1.2draft"


def gexf_document(
    graph: WeightedGraph,
    partition: dict[str, int] | None = None,
    centrality: dict[str, float] | None = None,
    bot_overall: dict[str, float] | None = None,
) -> str:
    """Render the graph as a GEXF 1.2 string."""
    if len(graph) == 0:
        raise DataError("refusing to export an empty graph")

    ET.register_namespace("", _NS)
    root = ET.Element(f"{{{_NS}}}gexf", {"version": "1.2"})
    g = ET.SubElement(
        root,
        f"{{{_NS}}}graph",
        {
            "defaultedgetype": "directed" if graph.directed else "undirected",
            "mode": "static",
        },
    )

    attr_specs = []
    if partition is not None:
        attr_specs.append(("community", "integer", partition))
    if centrality is not None:
        attr_specs.append(("centrality", "double", centrality))
    if bot_overall is not None:
        attr_specs.append(("bot_overall", "double", bot_overall))

    if attr_specs:
        attrs = ET.SubElement(g, f"{{{_NS}}}attributes", {"class": "node"})
        for idx, (title, kind, _) in enumerate(attr_specs):
            ET.SubElement(
                attrs,
                f"{{{_NS}}}attribute",
                {"id": str(idx), "title": title, "type": kind},
            )

    nodes_el = ET.SubElement(g, f"{{{_NS}}}nodes")
    for name in sorted(graph.nodes):
        node_el = ET.SubElement(
            nodes_el, f"{{{_NS}}}node", {"id": name, "label": name}
        )
        values = [
            (idx, mapping[name])
            for idx, (_, _, mapping) in enumerate(attr_specs)
            if name in mapping
        ]
        if values:
            attvalues = ET.SubElement(node_el, f"{{{_NS}}}attvalues")
            for idx, value in values:
                ET.SubElement(
                    attvalues,
                    f"{{{_NS}}}attvalue",
                    {"for": str(idx), "value": _fmt(value)},
                )

    edges_el = ET.SubElement(g, f"{{{_NS}}}edges")
    for eid, (u, v, w) in enumerate(sorted(graph.edges())):
        ET.SubElement(
            edges_el,
            f"{{{_NS}}}edge",
            {
                "id": str(eid),
                "source": u,
                "target": v,
                "weight": _fmt(w),
            },
        )

    rough = ET.tostring(root, encoding="unicode")
    pretty = minidom.parseString(rough).toprettyxml(indent="  ")
    # minidom prepends its own declaration; normalize to utf-8 wording
    lines = [ln for ln in pretty.splitlines() if ln.strip()]
    lines[0] = '<?xml version="1.0" encoding="UTF-8"?>'
    return "\n".join(lines) + "\n"


def write_gexf(
    path: str,
    graph: WeightedGraph,
    partition: dict[str, int] | None = None,
    centrality: dict[str, float] | None = None,
    bot_overall: dict[str, float] | None = None,
) -> None:
    doc = gexf_document(graph, partition, centrality, bot_overall)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(doc)
    except OSError as exc:
        raise DataError(f"cannot write GEXF to {path}: {exc}") from exc


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return format(float(value), "g")
