"""Dev-only exploration: build S(c) root shapes, print MC of their powers."""
from galledpower.graph_core import Graph
from galledpower.network import GNetwork, leaf_power, validate
from galledpower.clique_graph import build_mc

COUNTER = [0]

def show(title, n):
    assert not validate(n), (title, validate(n))
    g = leaf_power(n, 4)
    cg = build_mc(g)
    if not hasattr(cg, 'cliques'):
        print(f"== {title}: EVIDENCE {cg}")
        return None
    print(f"== {title}")
    for i in cg.nodes():
        print(f"   node {i} = {cg.describe(i)}")
    for (i, j), lab in sorted(cg.edge_labels.items()):
        print(f"   edge {i}-{j} w{len(lab)} {{{','.join(sorted(lab))}}}")
    return cg

def net(cycle_spec, attach):
    """cycle_spec: list of (name, leaf-or-None); attach: dict name -> #extras.
    Extras are depth-1 visible stars hanging off the named cycle vertex."""
    vs, edges, leaves = [], [], {}
    names = [c[0] for c in cycle_spec]
    for nm, lf in cycle_spec:
        vs.append('#' + nm)
        if lf:
            leaves['#' + nm] = [lf]
    k = len(names)
    for i in range(k):
        edges.append(('#' + names[i], '#' + names[(i + 1) % k]))
    serial = [0]
    for nm, cnt in attach.items():
        for t in range(cnt):
            w = f"#x{nm}{t}"
            vs.append(w)
            edges.append(('#' + nm, w))
            leaves[w] = [f"e{nm}{t}"]
            serial[0] += 1
    return GNetwork(Graph(vs, edges), leaves)

print("################ easy shapes ################")
# 3cyc-0inv, 3 attach -> expect C1 (w3 triangle, equal labels)
show("3cyc-0inv 3attach (C1)", net([('a','xa'),('b','xb'),('c','xc')], {'a':1,'b':1,'c':1}))
# 3cyc-0inv, 2 attach -> expect C9 (w3 segment)
show("3cyc-0inv 2attach (C9 / R9,1)", net([('a','xa'),('b','xb'),('c','xc')], {'a':1,'b':1}))
# N4 + 2 stars -> C2
show("N4 2 stars (C2)", net([('a','xa'),('b','xb'),('c','xc'),('d','xd')], {'a':1,'b':1}))
# N5 + 2 stars -> C2
show("N5 2 stars (C2)", net([('a','xa'),('b','xb'),('c','xc'),('d','xd'),('e','xe')], {'b':1,'c':1}))
# 6cyc-0inv bare and attached -> C3 (8 nodes 12 edges)
show("6cyc-0inv bare (C3)", net([(c, 'x'+c) for c in 'abcdef'], {}))
show("6cyc-0inv 2attach (C3)", net([(c, 'x'+c) for c in 'abcdef'], {'a':1,'d':1}))
# 8cyc alternating invisible -> C' 4-cycle all w1
show("8cyc 4inv alternating (C')", net([('a','xa'),('i1',None),('b','xb'),('i2',None),('c','xc'),('i3',None),('d','xd'),('i4',None)], {'i1':1}))
# big 7-cycle, no invisible, stars everywhere -> C' 7-cycle w2
show("7cyc 0inv all-attach (C')", net([(c,'x'+c) for c in 'abcdefg'], {c:1 for c in 'abcdefg'}))
# 6cyc-2inv-distance3 -> C' 4-cycle w1
show("6cyc-2inv-d3 (C')", net([('a','xa'),('b','xb'),('i1',None),('c','xc'),('d','xd'),('i2',None)], {'i1':1,'i2':1}))

print("################ C8 family ################")
# 3cyc-1inv all-3-attach -> C8 (w2 triangle equal labels)
show("3cyc-1inv 3attach (C8 / R8,1)", net([('a','xa'),('b','xb'),('u',None)], {'a':1,'b':1,'u':1}))
# 5cyc-2inv: v1,v2 visible+attached, u3,u5 invisible (+extras), v4 visible between invisibles
show("5cyc-2inv full (C8 / R8,2)", net([('a','xa'),('b','xb'),('u1',None),('c','xc'),('u2',None)], {'a':1,'b':1,'u1':1,'u2':1}))
show("5cyc-2inv no-inv-extras (R8,2 core)", net([('a','xa'),('b','xb'),('u1',None),('c','xc'),('u2',None)], {'a':1,'b':1}))

print("################ C4 family (claw) ################")
# 4cyc-1inv all-attach -> claw
show("4cyc-1inv all-attach (C4 / R4,1)", net([('u',None),('a','xa'),('b','xb'),('c','xc')], {'u':1,'a':1,'b':1,'c':1}))
# 6cyc-3inv -> claw w/ N6 center
show("6cyc-3inv (C4 / R4,5)", net([('a','xa'),('u1',None),('b','xb'),('u2',None),('c','xc'),('u3',None)], {'u1':1,'u2':1,'u3':1}))
# 6cyc-2inv-d2: a-u1-b-u2-c-d; attach u1,u2,d
show("6cyc-2inv-d2 {u1,u2,d} (C4 / R4,4)", net([('a','xa'),('u1',None),('b','xb'),('u2',None),('c','xc'),('d','xd')], {'u1':1,'u2':1,'d':1}))
# 5cyc-2inv w/ one visible attach: a(att),u1,b? -> R4,3: attach a,u3,u5
show("5cyc-2inv {a,u1,u2} (C4 / R4,3)", net([('a','xa'),('b','xb'),('u1',None),('c','xc'),('u2',None)], {'a':1,'u1':1,'u2':1}))
# 6cyc-1inv: full attach -> C6 4-cycle + pendants
print("################ C6 family ################")
show("6cyc-1inv full (C6)", net([('a','xa'),('b','xb'),('c','xc'),('d','xd'),('e','xe'),('u',None)], {'b':1,'c':1,'d':1,'u':1,'a':1,'e':1}))
show("6cyc-1inv minimal (C6)", net([('a','xa'),('b','xb'),('c','xc'),('d','xd'),('e','xe'),('u',None)], {}))

print("################ C5 family ################")
# 6cyc-2inv-d2 attach {u1, a-deep?}: need 4 cliques sharing common label
# cycle: l(=a) - u1 - b - u2 - c - d; attach u1 and a
show("6cyc-2inv-d2 {u1,a} (C5 / R5,3)", net([('a','xa'),('u1',None),('b','xb'),('u2',None),('c','xc'),('d','xd')], {'u1':1,'a':1}))
show("6cyc-2inv-d2 {u1,a,d} (C5+?)", net([('a','xa'),('u1',None),('b','xb'),('u2',None),('c','xc'),('d','xd')], {'u1':1,'a':1,'d':1}))

print("################ N'5 / C2 halo ################")
show("N'5 full attach", net([('a','xa'),('b','xb'),('c','xc'),('d','xd'),('u',None)], {'a':1,'b':1,'c':1,'d':1,'u':1}))
show("N'5 two w3 arms only (C2 with N'5 middle)", net([('a','xa'),('b','xb'),('c','xc'),('d','xd'),('u',None)], {'b':1,'c':1,'u':1}))
