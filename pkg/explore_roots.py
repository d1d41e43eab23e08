"""Dev check: detect patterns on each S(c) shape and rebuild validated roots."""
from galledpower.graph_core import Graph
from galledpower.network import GNetwork, leaf_power, validate
from galledpower.clique_graph import build_mc
from galledpower import patterns as P


def net(cycle_spec, attach, deep=()):
    vs, edges, leaves = [], [], {}
    names = [c[0] for c in cycle_spec]
    for nm, lf in cycle_spec:
        vs.append('#' + nm)
        if lf:
            leaves['#' + nm] = [lf]
    k = len(names)
    for i in range(k):
        edges.append(('#' + names[i], '#' + names[(i + 1) % k]))
    for nm, cnt in attach.items():
        for t in range(cnt):
            w = f"#x{nm}{t}"
            vs.append(w)
            edges.append(('#' + nm, w))
            leaves[w] = [f"e{nm}{t}"]
    for nm, leaf, extras in deep:
        w = f"#d{nm}"
        vs.append(w)
        edges.append(('#' + nm, w))
        leaves[w] = [leaf]
        for t in range(extras):
            z = f"#dd{nm}{t}"
            vs.append(z)
            edges.append((w, z))
            leaves[z] = [f"f{nm}{t}"]
    return GNetwork(Graph(vs, edges), leaves)


CASES = [
    ("C1", net([('a','xa'),('b','xb'),('c','xc')], {'a':1,'b':1,'c':1})),
    ("C9 quasi", net([('a','xa'),('b','xb'),('c','xc')], {'a':1,'b':2})),
    ("C2 N4", net([('a','xa'),('b','xb'),('c','xc'),('d','xd')], {'a':1,'b':1})),
    ("C2 N4 k3", net([('a','xa'),('b','xb'),('c','xc'),('d','xd')], {'a':1,'b':1,'c':2})),
    ("C2 N5", net([('a','xa'),('b','xb'),('c','xc'),('d','xd'),('e','xe')], {'b':1,'c':1})),
    ("C3 bare", net([(c, 'x'+c) for c in 'abcdef'], {})),
    ("C3 rich", net([(c, 'x'+c) for c in 'abcdef'], {'a':1,'d':2})),
    ("C' 8cyc", net([('a','xa'),('i1',None),('b','xb'),('i2',None),('c','xc'),('i3',None),('d','xd'),('i4',None)], {'i1':1})),
    ("C' 7cyc", net([(c,'x'+c) for c in 'abcdefg'], {c:1 for c in 'abcdefg'})),
    ("C' 6cyc d3", net([('a','xa'),('b','xb'),('i1',None),('c','xc'),('d','xd'),('i2',None)], {'i1':1,'i2':1})),
    ("C8 tri", net([('a','xa'),('b','xb'),('u',None)], {'a':1,'b':1,'u':1})),
    ("C8 5cyc", net([('a','xa'),('b','xb'),('u1',None),('c','xc'),('u2',None)], {'a':1,'b':1,'u1':1,'u2':1})),
    ("C4 R4,1", net([('u',None),('a','xa'),('b','xb'),('c','xc')], {'u':1,'a':1,'b':1,'c':1})),
    ("C4 R4,5", net([('a','xa'),('u1',None),('b','xb'),('u2',None),('c','xc'),('u3',None)], {'u1':1,'u2':1,'u3':1})),
    ("C4 R4,4", net([('a','xa'),('u1',None),('b','xb'),('u2',None),('c','xc'),('d','xd')], {'u1':1,'u2':1,'d':1})),
    ("C4 R4,3", net([('a','xa'),('b','xb'),('u1',None),('c','xc'),('u2',None)], {'a':1,'u1':1,'u2':1})),
    ("C6 full", net([('a','xa'),('b','xb'),('c','xc'),('d','xd'),('e','xe'),('u',None)], {'b':1,'c':1,'d':1,'u':1,'a':1,'e':1})),
    ("C6 min", net([('a','xa'),('b','xb'),('c','xc'),('d','xd'),('e','xe'),('u',None)], {})),
    ("C5 R5,3", net([('a','xa'),('u1',None),('b','xb'),('u2',None),('c','xc'),('d','xd')], {'u1':1,'a':1})),
    ("C5 R5,3b", net([('a','xa'),('u1',None),('b','xb'),('u2',None),('c','xc'),('d','xd')], {'u1':1,'a':1,'d':1})),
    ("C5 R5,1", net([('u',None),('l','L'),('b','xb'),('a','xa')], {'u':1,'l':1}, deep=[('l','D',1)])),
    ("C5 R5,2", net([('l','L'),('b','xb'),('u3',None),('a','xa'),('u5',None)], {'u5':1}, deep=[('l','D',1)])),
    ("C7 R7,1", net([('u',None),('a','xa'),('m','xm'),('b','xb')], {'u':1}, deep=[('m','D',1)])),
    ("C7 R7,2", net([('u',None),('a','xa'),('b','xb'),('c','xc'),('d','xd')], {'a':1,'d':1})),
    ("C7 R7,3", net([('a','xa'),('u1',None),('g','xg'),('u2',None),('b','xb'),('m','xm')], {'u1':1}, deep=[('m','D',1)])),
    ("N'5 full", net([('a','xa'),('b','xb'),('c','xc'),('d','xd'),('u',None)], {'a':1,'b':1,'c':1,'d':1,'u':1})),
    ("tree only", net([('a','xa'),('b','xb'),('c','xc'),('d','xd')], {'a':1,'c':1})[0:0] if False else None),
]


def run(title, n):
    g = leaf_power(n, 4)
    cg = build_mc(g)
    easy = P.detect_easy(cg)
    if not isinstance(easy, list):
        print(f"{title:12s} EVIDENCE {easy}")
        return
    other = P.detect_other(cg, easy)
    pats = easy + other
    kinds = sorted(p.kind for p in pats)
    roots = {}
    fails = []
    for p in [q for q in pats if q.kind in P.EASY_KINDS]:
        try:
            roots[p.nodes] = P.easy_root(cg, p)
        except P.InfeasiblePattern as e:
            fails.append(str(e))
    status = []
    for p in [q for q in pats if q.kind in P.OTHER_KINDS]:
        rs = P.root_set(cg, p, pats, roots)
        status.append(f"{p.kind}:{len(rs.candidates)}[{','.join(c.catalogue_id for c in rs.candidates)}]")
    print(f"{title:12s} kinds={kinds} easy_ok={len(roots)} fails={fails} other={status}")


for title, n in CASES:
    if n is not None:
        run(title, n)
