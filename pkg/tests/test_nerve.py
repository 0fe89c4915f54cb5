from unittest import TestCase, main

from numpy.testing import assert_array_equal

from cube_paths.chains import enumerate_morphisms
from cube_paths.nerve import chain_complex, euler_characteristic, homology, \
    length_report, nerve, path_space_report, write_sparse_triplets
from cube_paths.pcset import CellId, boundary, cube_words, \
    from_named_cells, standard_cube, word_face


def corners(n):
    return CellId(0, 0), CellId(0, 2 ** n - 1)


def category(K, n):
    return enumerate_morphisms(K, *corners(n), n)


def betti(K, n, **kwargs):
    return homology(chain_complex(nerve(category(K, n))), **kwargs).betti


def reversed_boundary(n):
    """∂□[n] with the cells of every dimension listed in reverse order"""
    cells = {}
    for words in cube_words(n)[:n]:
        for word in reversed(words):
            k = word.count('*')
            cells[word] = [(word_face(word, i, 0), word_face(word, i, 1))
                           for i in range(1, k + 1)]
    return from_named_cells(cells)


class TestNerve(TestCase):
    def test_point(self):
        """one object, no arrows"""
        X = nerve(category(standard_cube(1), 1))
        self.assertEqual(X.counts(), [1])
        result = homology(chain_complex(X))
        self.assertEqual(result.betti, (1,))
        self.assertEqual(result.euler, 1)

    def test_square(self):
        """3 vertices and 2 edges"""
        X = nerve(category(standard_cube(2), 2))
        self.assertEqual(X.counts(), [3, 2])
        self.assertFalse(X.truncated)

    def test_cube(self):
        """contractible, the top cube is a cone point"""
        X = nerve(category(standard_cube(3), 3))
        self.assertEqual(X.dimension, 2)
        self.assertEqual(homology(chain_complex(X)).betti, (1,))

    def test_truncated(self):
        C = category(standard_cube(3), 3)
        X = nerve(C, max_dim=1)
        self.assertEqual(X.dimension, 1)
        self.assertTrue(X.truncated)
        self.assertEqual(homology(chain_complex(X)).betti, (1,))

    def test_boundary_of_boundary(self):
        complex_z = chain_complex(nerve(category(standard_cube(3), 3)))
        product = complex_z.boundaries[1] @ complex_z.boundaries[2]
        assert_array_equal(product, 0)


class TestHomology(TestCase):
    def test_cubes_contractible(self):
        """terminal object gives b = (1)"""
        for n in range(1, 5):
            self.assertEqual(betti(standard_cube(n), n), (1,))

    def test_hollow_square(self):
        self.assertEqual(betti(boundary(2), 2), (2,))

    def test_hollow_cube(self):
        """a circle of twelve chains"""
        X = nerve(category(boundary(3), 3))
        self.assertEqual(X.counts(), [12, 12])
        result = homology(chain_complex(X))
        self.assertEqual(result.betti, (1, 1))
        self.assertEqual(result.euler, 0)

    def test_integer(self):
        result = homology(chain_complex(nerve(category(boundary(3), 3))),
                          coefficients='integer')
        self.assertEqual(result.betti, (1, 1))
        self.assertEqual(result.torsion, ())
        self.assertEqual(result.rational_fallback, ())

    def test_integer_fallback(self):
        """large matrices use rational ranks"""
        result = homology(chain_complex(nerve(category(standard_cube(3), 3))),
                          coefficients='integer', snf_limit=1)
        self.assertEqual(result.betti, (1,))
        self.assertEqual(result.rational_fallback, (0, 1))

    def test_bad_coefficients(self):
        X = chain_complex(nerve(category(standard_cube(2), 2)))
        with self.assertRaises(ValueError):
            homology(X, coefficients='mod2')

    def test_euler(self):
        """alternating simplex count equals alternating Betti sum"""
        for K, n in ((standard_cube(3), 3), (boundary(3), 3),
                     (boundary(2), 2)):
            X = nerve(category(K, n))
            result = homology(chain_complex(X))
            self.assertEqual(euler_characteristic(X), result.euler)
            self.assertEqual(result.euler,
                             sum((-1) ** k * b
                                 for k, b in enumerate(result.betti)))

    def test_relabel_invariance(self):
        K = reversed_boundary(3)
        alpha, beta = K.cell_by_label('000'), K.cell_by_label('111')
        C = enumerate_morphisms(K, alpha, beta, 3)
        self.assertEqual(homology(chain_complex(nerve(C))).betti, (1, 1))

    def test_sparse_triplets(self):
        complex_z = chain_complex(nerve(category(standard_cube(2), 2)))
        lines = write_sparse_triplets(complex_z).splitlines()
        self.assertEqual(lines[0], "dim 1 rows 3 cols 2")
        self.assertEqual(len(lines), 5)
        values = sorted(int(line.split()[2]) for line in lines[1:])
        self.assertEqual(values, [-1, -1, 1, 1])


class TestReport(TestCase):
    def test_square(self):
        reports = path_space_report(standard_cube(2), *corners(2))
        self.assertEqual(len(reports), 1)
        self.assertEqual(reports[0].n, 2)
        self.assertEqual(reports[0].chains, 3)
        self.assertEqual(reports[0].betti, (1,))

    def test_hollow(self):
        self.assertEqual(path_space_report(boundary(2), *corners(2))[0].betti,
                         (2,))
        self.assertEqual(path_space_report(boundary(3), *corners(3))[0].betti,
                         (1, 1))

    def test_max_dim(self):
        """betti numbers cut at max_dim"""
        report = length_report(3, boundary(3), *corners(3), max_dim=0)
        self.assertEqual(report.betti, (1,))

    def test_unreachable(self):
        K = standard_cube(2)
        self.assertEqual(path_space_report(K, CellId(0, 3), CellId(0, 0)), [])

    def test_jobs_deterministic(self):
        K = standard_cube(3)
        self.assertEqual(path_space_report(K, *corners(3), max_n=4, jobs=2),
                         path_space_report(K, *corners(3), max_n=4))


if __name__ == "__main__":
    main()
