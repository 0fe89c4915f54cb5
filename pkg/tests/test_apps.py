import json
import os
import shutil
from unittest import TestCase, main

from click.testing import CliRunner

from cube_paths.dpath import read_reparam
from cube_paths.path_analysis import main as cp_main
from cube_paths.pcset import boundary, read_pcs, standard_cube
from cube_paths.util import makedirs, read_text


class TestGenerate(TestCase):
    dirname = "_delme_generate"

    def tearDown(self) -> None:
        shutil.rmtree(self.dirname, ignore_errors=True)

    def test_stdout(self):
        runner = CliRunner()
        r = runner.invoke(cp_main, ["generate", "cube", "2"])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(read_pcs(r.output), standard_cube(2))

    def test_boundary_zero(self):
        """∂□[0] is empty"""
        runner = CliRunner()
        r = runner.invoke(cp_main, ["generate", "boundary", "0"])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(read_pcs(r.output), boundary(0))

    def test_outfile(self):
        """writes the complex and a log"""
        runner = CliRunner()
        outfile = os.path.join(self.dirname, "hollow.pcs")
        r = runner.invoke(cp_main, ["generate", "boundary", "3",
                                    "-o%s" % outfile])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(set(os.listdir(self.dirname)),
                         {"hollow.pcs", "hollow.log"})
        self.assertEqual(read_pcs(read_text(outfile)), boundary(3))
        # refuses to overwrite without -F
        r = runner.invoke(cp_main, ["generate", "boundary", "3",
                                    "-o%s" % outfile])
        self.assertEqual(r.exit_code, 2)
        r = runner.invoke(cp_main, ["generate", "boundary", "3",
                                    "-o%s" % outfile, "-F"])
        self.assertEqual(r.exit_code, 0, r.output)

    def test_skeleton(self):
        runner = CliRunner()
        r = runner.invoke(cp_main, ["generate", "skeleton", "1",
                                    "-idata/square.pcs"])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(read_pcs(r.output).dims, (4, 4))


class TestPaths(TestCase):
    dirname = "_delme_paths"

    def tearDown(self) -> None:
        shutil.rmtree(self.dirname, ignore_errors=True)

    def write_hollow_square(self):
        makedirs(self.dirname)
        path = os.path.join(self.dirname, "hollow.pcs")
        runner = CliRunner()
        runner.invoke(cp_main, ["generate", "boundary", "2", "-o%s" % path])
        return path

    def test_square_json(self):
        runner = CliRunner()
        r = runner.invoke(cp_main, ["paths", "-idata/square.pcs", "--json"])
        self.assertEqual(r.exit_code, 0, r.output)
        data = json.loads(r.output)
        self.assertEqual(data["source"], "00")
        self.assertEqual(data["target"], "11")
        self.assertEqual(len(data["lengths"]), 1)
        self.assertEqual(data["lengths"][0]["n"], 2)
        self.assertEqual(data["lengths"][0]["chains"], 3)
        self.assertEqual(data["lengths"][0]["betti"], [1])
        self.assertIn("up to homotopy", data["note"])

    def test_square_table(self):
        runner = CliRunner()
        r = runner.invoke(cp_main, ["paths", "-idata/square.pcs"])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertIn("betti", r.output)

    def test_hollow_square(self):
        """two schedules"""
        path = self.write_hollow_square()
        runner = CliRunner()
        r = runner.invoke(cp_main, ["paths", "-i%s" % path, "--json"])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(json.loads(r.output)["lengths"][0]["betti"], [2])

    def test_unreachable(self):
        """no chains is a result, not an error"""
        runner = CliRunner()
        r = runner.invoke(cp_main, ["paths", "-idata/square.pcs", "--from",
                                    "11", "--to", "00", "--json"])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(json.loads(r.output)["lengths"], [])

    def test_bad_vertex(self):
        runner = CliRunner()
        r = runner.invoke(cp_main, ["paths", "-idata/square.pcs", "--from",
                                    "zz"])
        self.assertEqual(r.exit_code, 2)

    def test_bad_inputs(self):
        """cubical relation failure is a verdict, bad json is an input
        error"""
        runner = CliRunner()
        r = runner.invoke(cp_main, ["paths", "-idata/bad_square.pcs"])
        self.assertEqual(r.exit_code, 1)
        r = runner.invoke(cp_main, ["paths", "-idata/truncated.pcs"])
        self.assertEqual(r.exit_code, 2)
        r = runner.invoke(cp_main, ["paths", "-idata/missing.pcs"])
        self.assertEqual(r.exit_code, 2)

    def test_jobs(self):
        """one process and eight give byte-identical reports"""
        runner = CliRunner()
        args = ["pv", "analyze", "data/swiss_flag.pv", "--json", "--max-dim",
                "0", "--length-window", "1"]
        serial = runner.invoke(cp_main, args + ["--jobs", "1"])
        parallel = runner.invoke(cp_main, args + ["--jobs", "8"])
        self.assertEqual(serial.exit_code, 0, serial.output)
        self.assertEqual(parallel.exit_code, 0, parallel.output)
        self.assertEqual(serial.output, parallel.output)

    def test_generated_inputs(self):
        """cube:N, boundary:N and skeleton:N:PATH stand in for files"""
        runner = CliRunner()
        r = runner.invoke(cp_main, ["paths", "-icube:3", "--json"])
        self.assertEqual(r.exit_code, 0, r.output)
        data = json.loads(r.output)
        self.assertEqual((data["source"], data["target"]), ("000", "111"))
        self.assertEqual(data["lengths"][0]["chains"], 13)
        self.assertEqual(data["lengths"][0]["betti"], [1])
        r = runner.invoke(cp_main, ["paths", "-iboundary:3", "--json"])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(json.loads(r.output)["lengths"][0]["betti"], [1, 1])
        r = runner.invoke(cp_main, ["paths", "-iskeleton:1:data/square.pcs",
                                    "--json"])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(json.loads(r.output)["lengths"][0]["betti"], [2])
        r = runner.invoke(cp_main, ["category", "-iboundary:2", "-n", "2"])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(len(json.loads(r.output)["objects"]), 2)

    def test_bad_generated_inputs(self):
        runner = CliRunner()
        for spec in ("cube:x", "cube:2:data/square.pcs", "skeleton:1",
                     "skeleton:1:data/missing.pcs"):
            r = runner.invoke(cp_main, ["paths", "-i%s" % spec])
            self.assertEqual(r.exit_code, 2, spec)

    def test_faces_not_an_object(self):
        """a face table given as a list is an input error"""
        makedirs(self.dirname)
        path = os.path.join(self.dirname, "listed.pcs")
        with open(path, "w") as out:
            out.write('{"dims": [2, 1], "faces": [[[0, 1]]]}')
        runner = CliRunner()
        r = runner.invoke(cp_main, ["paths", "-i%s" % path])
        self.assertEqual(r.exit_code, 2)
        self.assertIn("object keyed by dimension", r.output)

    def test_outpath(self):
        runner = CliRunner()
        r = runner.invoke(cp_main, ["paths", "-idata/square.pcs",
                                    "-o%s" % self.dirname])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(set(os.listdir(self.dirname)),
                         {"paths.json", "paths.log"})
        data = json.loads(read_text(os.path.join(self.dirname,
                                                 "paths.json")))
        self.assertEqual(data["lengths"][0]["chains"], 3)

    def test_emit_complex(self):
        runner = CliRunner()
        outdir = os.path.join(self.dirname, "matrices")
        r = runner.invoke(cp_main, ["paths", "-idata/square.pcs",
                                    "--emit-complex", outdir])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(os.listdir(outdir), ["boundary_n2.txt"])
        lines = read_text(os.path.join(outdir,
                                       "boundary_n2.txt")).splitlines()
        self.assertEqual(lines[0], "dim 1 rows 3 cols 2")

    def test_config(self):
        """file settings apply, command line wins"""
        runner = CliRunner()
        r = runner.invoke(cp_main, ["paths", "-idata/square.pcs", "--json",
                                    "--config", "data/analysis.cfg"])
        self.assertEqual(r.exit_code, 0, r.output)
        data = json.loads(r.output)
        self.assertEqual(data["coefficients"], "integer")
        # length 3 is in the window but has no chains
        self.assertEqual([d["n"] for d in data["lengths"]], [2])
        r = runner.invoke(cp_main, ["paths", "-idata/square.pcs", "--json",
                                    "--config", "data/analysis.cfg",
                                    "--coefficients", "rational"])
        self.assertEqual(json.loads(r.output)["coefficients"], "rational")

    def test_bad_settings(self):
        runner = CliRunner()
        r = runner.invoke(cp_main, ["paths", "-idata/square.pcs", "--jobs",
                                    "0"])
        self.assertEqual(r.exit_code, 2)


class TestNaturalize(TestCase):
    dirname = "_delme_natural"

    def tearDown(self) -> None:
        shutil.rmtree(self.dirname, ignore_errors=True)

    def test_diagonal(self):
        """the square diagonal at unit speed has arc length 2"""
        runner = CliRunner()
        r = runner.invoke(cp_main, ["naturalize", "-idata/square.pcs",
                                    "--dpath", "data/diagonal.dpath",
                                    "--json"])
        self.assertEqual(r.exit_code, 0, r.output)
        data = json.loads(r.output)
        self.assertEqual(data["reparam"], [["0/1", "0/1"], ["1/1", "2/1"]])
        self.assertEqual(data["arc_length"], "2/1")
        self.assertTrue(data["regular"])
        self.assertFalse(data["natural"])

    def test_pause(self):
        """a stop interval is not regular"""
        runner = CliRunner()
        r = runner.invoke(cp_main, ["naturalize", "-idata/square.pcs",
                                    "--dpath", "data/pause.dpath"])
        self.assertEqual(r.exit_code, 1)

    def test_pause_allowed(self):
        """with --allow-stops the pause becomes a flat piece of the map"""
        runner = CliRunner()
        r = runner.invoke(cp_main, ["naturalize", "-idata/square.pcs",
                                    "--dpath", "data/pause.dpath",
                                    "--allow-stops", "--json"])
        self.assertEqual(r.exit_code, 0, r.output)
        data = json.loads(r.output)
        self.assertFalse(data["regular"])
        self.assertEqual(data["reparam"], [["0/1", "0/1"], ["1/3", "1/1"],
                                           ["2/3", "1/1"], ["1/1", "2/1"]])
        self.assertEqual(len(data["natural_path"]), 1)

    def test_staircase(self):
        """already natural, the reparametrisation is the identity"""
        runner = CliRunner()
        r = runner.invoke(cp_main, ["naturalize", "-idata/square.pcs",
                                    "--dpath", "data/staircase.dpath",
                                    "--json"])
        self.assertEqual(r.exit_code, 0, r.output)
        data = json.loads(r.output)
        self.assertTrue(data["natural"])
        self.assertTrue(data["tame"])
        self.assertEqual(data["reparam"], [["0/1", "0/1"], ["2/1", "2/1"]])

    def test_outpath(self):
        runner = CliRunner()
        r = runner.invoke(cp_main, ["naturalize", "-idata/square.pcs",
                                    "--dpath", "data/diagonal.dpath",
                                    "-o%s" % self.dirname])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(set(os.listdir(self.dirname)),
                         {"diagonal.reparam", "diagonal.natural.dpath",
                          "naturalize.log"})
        phi = read_reparam(read_text(os.path.join(self.dirname,
                                                  "diagonal.reparam")))
        self.assertEqual(phi(1), 2)

    def test_bad_dpath(self):
        runner = CliRunner()
        r = runner.invoke(cp_main, ["naturalize", "-idata/square.pcs",
                                    "--dpath", "data/square.pcs"])
        self.assertEqual(r.exit_code, 2)


class TestCheckSpatial(TestCase):
    dirname = "_delme_spatial"

    def tearDown(self) -> None:
        shutil.rmtree(self.dirname, ignore_errors=True)

    def test_square(self):
        runner = CliRunner()
        r = runner.invoke(cp_main, ["check-spatial", "-idata/square.pcs"])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(r.output.strip(), "spatial")

    def test_unsupported(self):
        runner = CliRunner()
        outfile = os.path.join(self.dirname, "cube4.pcs")
        runner.invoke(cp_main, ["generate", "cube", "4", "-o%s" % outfile])
        r = runner.invoke(cp_main, ["check-spatial", "-i%s" % outfile,
                                    "--json"])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(json.loads(r.output)["verdict"],
                         "unsupported(dim=4)")


class TestPv(TestCase):
    dirname = "_delme_pv"

    def tearDown(self) -> None:
        shutil.rmtree(self.dirname, ignore_errors=True)

    def test_compile(self):
        runner = CliRunner()
        r = runner.invoke(cp_main, ["pv", "compile", "data/mutex.pv"])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(json.loads(r.output)["dims"], [9, 12, 3])

    def test_compile_outfile(self):
        runner = CliRunner()
        outfile = os.path.join(self.dirname, "mutex.pcs")
        r = runner.invoke(cp_main, ["pv", "compile", "data/mutex.pv",
                                    "--emit-pcs", outfile])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(read_pcs(read_text(outfile)).dims, (9, 12, 3))

    def test_analyze_swiss_flag(self):
        """two components and one deadlock"""
        runner = CliRunner()
        r = runner.invoke(cp_main, ["pv", "analyze", "data/swiss_flag.pv",
                                    "--json", "--max-dim", "0"])
        self.assertEqual(r.exit_code, 0, r.output)
        data = json.loads(r.output)
        self.assertEqual(data["lengths"][0]["n"], 8)
        self.assertEqual(data["lengths"][0]["betti"][0], 2)
        self.assertEqual(data["deadlock_candidates"], ["2,2"])
        self.assertEqual(data["source"], "0,0")
        self.assertEqual(data["target"], "4,4")

    def test_analyze_emit_pcs(self):
        """the compiled complex is written once, then needs -F"""
        runner = CliRunner()
        outfile = os.path.join(self.dirname, "mutex.pcs")
        args = ["pv", "analyze", "data/mutex.pv", "--json",
                "--emit-pcs", outfile]
        r = runner.invoke(cp_main, args)
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(read_pcs(read_text(outfile)).dims, (9, 12, 3))
        with open(outfile, "w") as out:
            out.write("kept")
        r = runner.invoke(cp_main, args)
        self.assertEqual(r.exit_code, 2)
        self.assertEqual(read_text(outfile), "kept")
        r = runner.invoke(cp_main, args + ["-F"])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertEqual(read_pcs(read_text(outfile)).dims, (9, 12, 3))

    def test_analyze_table(self):
        runner = CliRunner()
        r = runner.invoke(cp_main, ["pv", "analyze", "data/mutex.pv"])
        self.assertEqual(r.exit_code, 0, r.output)
        self.assertIn("P(a).V(a)", r.output)
        self.assertIn("deadlock candidates: none", r.output)

    def test_bad_program(self):
        runner = CliRunner()
        r = runner.invoke(cp_main, ["pv", "compile", "data/bad.pv"])
        self.assertEqual(r.exit_code, 2)
        r = runner.invoke(cp_main, ["pv", "analyze", "data/bad.pv"])
        self.assertEqual(r.exit_code, 2)


class TestCategory(TestCase):
    def test_square(self):
        runner = CliRunner()
        r = runner.invoke(cp_main, ["category", "-idata/square.pcs", "-n",
                                    "2"])
        self.assertEqual(r.exit_code, 0, r.output)
        data = json.loads(r.output)
        self.assertEqual(len(data["objects"]), 3)
        self.assertEqual(len(data["arrows"]), 2)
        self.assertEqual(data["n"], 2)


if __name__ == "__main__":
    main()
