"""From individual legislators to a polarization report.

The bundled demo chamber has six unions and five unaffiliated members.  Each
independent joins the union holding at least two of its three nearest
affiliated neighbours; the rest form one residual group.
"""
from polarindex import METRICS, aggregate, attach_independents, nearest_neighbors, polarization_report
from polarindex.dataio import load_demo_chamber

chamber = load_demo_chamber()
attached = attach_independents(chamber)
for before, after in zip(chamber, attached):
    if before.independent:
        nn = [f"{i} ({chamber.member(i).affiliation}, {d:.3f})" for i, d in nearest_neighbors(chamber, before.id)]
        print(f"{before.id}: {', '.join(nn)} -> {after.affiliation or 'stays independent'}")

society = aggregate(attached, residual_cluster=True)
for group in society:
    print(f"{group.label:>12}  weight {group.weight:.2f}  at {tuple(round(x, 3) for x in group.position)}")

report = polarization_report(society)
print("center:", tuple(round(c, 4) for c in report.center))
print({m.value: round(report.values[m], 4) for m in METRICS})
