"""Single-term deletions from the fixture files, each with a check id that must notice it."""

# (file, path to the deleted item, a check id that must fail)
DELETIONS = [
    ("bsd_1.json", ["delta", 0], "gradings.stabilizer.1"),
    ("bsd_infty.json", ["delta", 0], "maps.cycle.finfty.0"),
    ("bsd_infty.json", ["delta", 3], "structure.infty"),
    ("bsd_0.json", ["delta", 0], "structure.0"),
    ("bsd_0.json", ["delta", 4], "structure.0"),
    ("map_f1.json", ["table", 0], "maps.cycle.f1.0"),
    ("map_f1.json", ["table", -1], "triangle.cond3.1"),
    ("map_finfty.json", ["table", 0], "triangle.cond1.infty"),
    ("map_finfty.json", ["table", 5], "maps.cycle.finfty.1"),
    ("map_f0.json", ["table", 0], "triangle.cond2.0"),
    ("map_f0.json", ["table", 6], "maps.cycle.f0.1"),
    ("homotopy_phiinfty.json", ["table", 0], "triangle.cond2.infty"),
    ("homotopy_phi0.json", ["table", 0], "triangle.cond3.0"),
    ("homotopy_phi0.json", ["table", 3], "equivalence.infty.PsiG"),
    ("refinement.json", ["assignment", 2], "gradings.refinement"),
    ("gradings.json", ["infty", "cosets", "y1"], "gradings.cosets.infty"),
    ("gradings.json", ["0", "stabilizer", 0], "gradings.stabilizer.0"),
    ("grading_table.json", [5], "gradings.table.refined"),
    ("grading_table.json", [14], "gradings.table.skein"),
    ("cone_homotopy_1.json", ["table", 0], "equivalence.1.stored_witness"),
    ("cone_homotopy_0.json", ["table", 2], "equivalence.0.stored_witness"),
    ("lattice_examples.json", ["6.2", "cases", 1], "lattice.6.2.infty"),
    ("lattice_examples.json", ["6.1", "cases", 3, "right", 0], "lattice.6.1.skein"),
    ("expected_shifts.json", ["0"], "shifts.f0"),
    ("periodic_domain_x.json", ["boundary", "78"], "gradings.periodic_domain"),
]


def apply_deletion(doc, path) -> None:
    cur = doc
    for step in path[:-1]:
        cur = cur[step]
    del cur[path[-1]]
