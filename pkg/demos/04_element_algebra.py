"""Elements of the limit groups: coherent families and their realizations.

Run:  python3 demos/04_element_algebra.py
"""

from cechwedge import (check_coherence, composition_realization, load_table,
                       materialize_levels, min_letter_element,
                       min_letter_subgroup_expr, parse_element_file,
                       parse_word, project_level, render_element_file,
                       render_text, verify_composition_additivity,
                       verify_weight2_realization, weight_two_element)
from cechwedge.groups import integer_element

table = load_table("seed")

# An element of an inverse limit is one compatible coordinate per level.
# The cheapest description is an infinite matrix: entry (i, j) weights the
# bracket of letters i and j.  Levels are then finite snapshots.

e = weight_two_element(2, {(1, 2): 1, (2, 3): -2, (1, 5): 4})
print("a weight-2 family over 2-spheres, degree 3:")
for k in (2, 3, 5):
    row = ", ".join("%s: %s" % (w, ",".join(map(str, f.coordinates())))
                    for w, f in sorted(e.level(k).coords.items(),
                                       key=lambda wf: wf[0].key))
    print("  level %d: {%s}" % (k, row))

# Compatibility is checkable: push level k+1 down and compare.  Corrupt
# one stored coordinate and the replay points at it.

rep = check_coherence(e, 6)
print("\ncoherence through level 6: %s" % ("ok" if rep.ok else "BROKEN"))
stream = materialize_levels(e, 6)
stream.levels[4][parse_word("[a1,a2]")] = integer_element(9)
rep = check_coherence(stream, 6)
print("after corrupting level 4: %s at %s"
      % ("ok" if rep.ok else "broken",
         ", ".join("level %d %s" % (k, w) for k, w in rep.failures)))

# The matrix is not just bookkeeping: a single mapping-telescope sum
# realizes it, and projecting that sum to level k reproduces the level-k
# coordinates.  The verifier replays both sides with two independent
# group resolutions.

print("\nweight-2 realization check: %s"
      % ("PASS" if verify_weight2_realization(
          {(1, 2): 1, (2, 3): -2}, 2, 6, table).ok else "FAIL"))

# Deeper words use per-least-letter families of compositions.  Their
# realization is additive, and the projection of the realization matches
# the element's own coordinates level by level.

a = min_letter_element(4, 2, {1: [("[a1,[a1,a2]]", 3)]}, table)
b = min_letter_element(4, 2, {2: [("[a2,[a2,a3]]", -1)]}, table)
print("composition additivity check: %s"
      % ("PASS" if verify_composition_additivity(a, b, 5, table).ok
         else "FAIL"))
expr = composition_realization(a + b)
assert project_level(expr, 4, table) == (a + b).level(4).coords

# The subgroup those families span has two equivalent shapes, grouping by
# letter or by weight:

forms = min_letter_subgroup_expr(4, 2, table)
print("\ndeep subgroup in degree 4, by letter:  %s"
      % render_text(forms.per_letter))
print("deep subgroup in degree 4, by weight:  %s"
      % render_text(forms.weight_split))
print("structurally equal: %s" % forms.equal)

# Elements also have a file form, round-trippable and diffable:

text = render_element_file(e)
print("\nelement file for the weight-2 family above:")
for line in text.splitlines():
    print("  " + line)
assert render_element_file(parse_element_file(text, table)) == text

# Larger seeded sweeps of these checks run from the command line, e.g.
#   cechwedge verify edge --random --seed 7 --m 2
#   cechwedge verify theta --random --seed 7 --n 4 --m 2
