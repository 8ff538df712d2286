// fracsob command-line front end: generation, evaluation, scaling sweeps,
// log-log fits and the end-to-end verification table. Every artifact is
// CSV/JSON with deterministic formatting, so identical invocations produce
// byte-identical files.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracsob/calculus.hpp"
#include "fracsob/experiments.hpp"
#include "fracsob/generators.hpp"
#include "fracsob/inequalities.hpp"
#include "fracsob/io.hpp"
#include "fracsob/parallel.hpp"
#include "fracsob/rng.hpp"
#include "fracsob/verify.hpp"

namespace {

using namespace fracsob;

struct GraphSource {
    std::string graphPath;
    std::string family = "vicsek";
    int d = 2;
    int generation = 3;
    int side = 5;

    void attach(CLI::App* cmd, bool generatorOnly = false) {
        if (!generatorOnly)
            cmd->add_option("--graph", graphPath, "graph JSON file (overrides --family)");
        cmd->add_option("--family", family, "vicsek | lattice | path")
            ->check(CLI::IsMember({"vicsek", "lattice", "path"}));
        cmd->add_option("--d", d, "generator dimension")->check(CLI::Range(1, 6));
        cmd->add_option("--gen", generation, "vicsek generation")->check(CLI::PositiveNumber);
        cmd->add_option("--side", side, "lattice/path side length")->check(CLI::Range(2, 1 << 24));
    }

    WeightedGraph resolve() const {
        if (!graphPath.empty()) return loadGraph(graphPath);
        if (family == "vicsek") return vicsek(d, generation).graph;
        if (family == "path") return latticeBox(1, side);
        return latticeBox(d, side);
    }

    VicsekModel resolveModel() const {
        if (!graphPath.empty()) {
            // Re-derive the model from the stored family parameters, then
            // confirm the file matches the regenerated graph.
            const WeightedGraph g = loadGraph(graphPath);
            if (g.info().family != "vicsek")
                throw ValidationError(graphPath + ": family \"" + g.info().family +
                                      "\" does not support this experiment (needs vicsek)");
            VicsekModel m = vicsek(static_cast<int>(g.info().parameter("d")),
                                   static_cast<int>(g.info().parameter("generation")));
            if (graphHash(m.graph) != graphHash(g))
                throw ValidationError(graphPath + ": edges differ from the regenerated " +
                                      "vicsek graph; file may be corrupted");
            return m;
        }
        if (family != "vicsek")
            throw ValidationError("this experiment needs --family vicsek");
        return vicsek(d, generation);
    }
};

VertexId resolveCenter(const WeightedGraph& g, const std::string& center) {
    if (center == "auto") {
        if (!g.info().center)
            throw ValidationError("graph has no center marker; pass --center <id>");
        return *g.info().center;
    }
    try {
        const unsigned long v = std::stoul(center);
        g.requireVertex(static_cast<VertexId>(v));
        return static_cast<VertexId>(v);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("--center must be \"auto\" or a vertex id, got \"" + center + "\"");
    }
}

std::vector<SampleRow> toRows(const std::vector<ScalingSample>& samples,
                              const std::string& experiment, const std::string& family, int d,
                              int k, double p) {
    std::vector<SampleRow> rows;
    for (const auto& s : samples) rows.push_back({experiment, family, d, k, p, s.scale, s.value, ""});
    return rows;
}

void emitRows(const std::vector<SampleRow>& rows, const std::string& out, bool quotientSchema) {
    if (!out.empty()) {
        writeSamplesCsv(rows, out, quotientSchema);
        return;
    }
    // no --out: print the CSV to stdout
    if (quotientSchema)
        std::cout << "family,d,k,p,scale,value,witnessHash\n";
    else
        std::cout << "experiment,family,d,k_or_gen,p,scale,value\n";
    for (const auto& r : rows) {
        if (quotientSchema)
            std::cout << r.family << ',' << r.d << ',' << r.k << ',' << formatDouble(r.p) << ','
                      << formatDouble(r.scale) << ',' << formatDouble(r.value) << ','
                      << r.witnessHash << '\n';
        else
            std::cout << r.experiment << ',' << r.family << ',' << r.d << ',' << r.k << ','
                      << formatDouble(r.p) << ',' << formatDouble(r.scale) << ','
                      << formatDouble(r.value) << '\n';
    }
}

std::string describeFit(const FitResult& fit) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "slope=%.6g intercept=%.6g R2=%.6g n=%d", fit.slope,
                  fit.intercept, fit.rSquared, fit.count);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted-graph functional-inequality toolkit"};
    app.require_subcommand(1);

    // ---- generate
    GraphSource genSrc;
    std::string genOut;
    auto* cmdGenerate = app.add_subcommand("generate", "build a graph and write its JSON file");
    genSrc.attach(cmdGenerate, /*generatorOnly=*/true);
    cmdGenerate->add_option("--out", genOut, "output graph file")->required();

    // ---- volume
    GraphSource volSrc;
    std::string volCenter = "auto", volOut;
    std::vector<int> volRadii;
    bool volFit = false;
    auto* cmdVolume = app.add_subcommand("volume", "ball-volume sweep mu(B(x,r))");
    volSrc.attach(cmdVolume);
    cmdVolume->add_option("--center", volCenter, "\"auto\" or vertex id");
    cmdVolume->add_option("--radii", volRadii, "increasing radii >= 1")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    cmdVolume->add_option("--out", volOut, "output CSV");
    cmdVolume->add_flag("--fit", volFit, "also fit the log-log slope");

    // ---- poincare
    GraphSource poiSrc;
    std::vector<int> poiRadii;
    double poiP = 2.0;
    int poiRandom = 0;
    int poiParallelism = 1;
    std::uint64_t poiSeed = 0x5EEDF1E1Du;
    std::string poiOut;
    auto* cmdPoincare =
        app.add_subcommand("poincare", "Poincare quotients of the diagonal candidates");
    poiSrc.attach(cmdPoincare);
    cmdPoincare->add_option("--radii", poiRadii, "ball radii")->required()->delimiter(',');
    cmdPoincare->add_option("--p", poiP, "exponent p >= 1")->check(CLI::Range(1.0, 64.0));
    cmdPoincare->add_option("--random-fields", poiRandom, "extra random witnesses per radius");
    cmdPoincare->add_option("--seed", poiSeed, "seed for random witnesses");
    cmdPoincare->add_option("--parallelism", poiParallelism, "worker threads")
        ->check(CLI::Range(1, 256));
    cmdPoincare->add_option("--out", poiOut, "output CSV");

    // ---- sobolev
    GraphSource sobSrc;
    std::vector<int> sobGens{2, 3, 4, 5};
    double sobP = 2.0;
    int sobParallelism = 1;
    std::string sobOut;
    auto* cmdSobolev =
        app.add_subcommand("sobolev", "Sobolev quotients of the extremal fields F_n");
    cmdSobolev->add_option("--d", sobSrc.d, "vicsek dimension")->check(CLI::Range(1, 6));
    cmdSobolev->add_option("--generations", sobGens, "generations n >= 2")->delimiter(',');
    cmdSobolev->add_option("--p", sobP, "exponent p >= 1")->check(CLI::Range(1.0, 64.0));
    cmdSobolev->add_option("--parallelism", sobParallelism, "worker threads")
        ->check(CLI::Range(1, 256));
    cmdSobolev->add_option("--out", sobOut, "output CSV");

    // ---- faber-krahn
    GraphSource fkSrc;
    std::vector<int> fkBlocks{2, 3, 4};
    double fkTol = 1e-10;
    std::string fkOut;
    auto* cmdFk = app.add_subcommand("faber-krahn",
                                     "smallest Dirichlet eigenvalues of centered blocks");
    fkSrc.attach(cmdFk);
    cmdFk->add_option("--blocks", fkBlocks, "block generations")->delimiter(',');
    cmdFk->add_option("--tol", fkTol, "relative eigenvalue tolerance");
    cmdFk->add_option("--out", fkOut, "output CSV");

    // ---- pathkernel
    GraphSource pkSrc;
    std::string pkCenter = "auto", pkOut;
    std::vector<int> pkRadii{1, 2, 3};
    double pkP = 2.0;
    auto* cmdPk = app.add_subcommand("pathkernel", "shortest-path kernel K(x,n)");
    pkSrc.attach(cmdPk);
    cmdPk->add_option("--center", pkCenter, "\"auto\" or vertex id");
    cmdPk->add_option("--radii", pkRadii, "ball radii")->delimiter(',');
    cmdPk->add_option("--p", pkP, "exponent p >= 1")->check(CLI::Range(1.0, 64.0));
    cmdPk->add_option("--out", pkOut, "output CSV");

    // ---- extremal
    GraphSource extSrc;
    int extN = 2;
    std::string extOut;
    auto* cmdExtremal = app.add_subcommand("extremal", "write the extremal field F_n");
    extSrc.attach(cmdExtremal, /*generatorOnly=*/true);
    cmdExtremal->add_option("--n", extN, "block generation")->required();
    cmdExtremal->add_option("--out", extOut, "output field JSON")->required();

    // ---- walk
    GraphSource walkSrc;
    std::string walkCenter = "auto", walkOut;
    int walkKmax = 100;
    bool walkFit = false;
    auto* cmdWalk = app.add_subcommand("walk", "exact return probabilities p_2k(x,x)");
    walkSrc.attach(cmdWalk);
    cmdWalk->add_option("--center", walkCenter, "\"auto\" or vertex id");
    cmdWalk->add_option("--kmax", walkKmax, "largest step count")->check(CLI::PositiveNumber);
    cmdWalk->add_option("--out", walkOut, "output CSV");
    cmdWalk->add_flag("--fit", walkFit, "also fit the log-log slope");

    // ---- escape
    GraphSource escSrc;
    std::string escCenter = "auto", escOut;
    std::vector<int> escRadii;
    double escTol = 1e-9;
    int escParallelism = 1;
    bool escFit = false;
    auto* cmdEscape = app.add_subcommand("escape", "mean exit times T(x,r)");
    escSrc.attach(cmdEscape);
    cmdEscape->add_option("--center", escCenter, "\"auto\" or vertex id");
    cmdEscape->add_option("--radii", escRadii, "ball radii >= 1")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    cmdEscape->add_option("--tol", escTol, "relative tolerance");
    cmdEscape->add_option("--parallelism", escParallelism, "worker threads")
        ->check(CLI::Range(1, 256));
    cmdEscape->add_option("--out", escOut, "output CSV");
    cmdEscape->add_flag("--fit", escFit, "also fit the log-log slope");

    // ---- eval
    std::string evalGraph, evalField, evalOp, evalOutField;
    double evalP = 2.0;
    int evalX = 0, evalN = 1, evalRoom = -1;
    auto* cmdEval = app.add_subcommand("eval", "evaluate a calculus operation on graph+field");
    cmdEval->add_option("--graph", evalGraph, "graph JSON file")->required();
    cmdEval->add_option("--field", evalField, "field JSON file")->required();
    cmdEval->add_option("--op", evalOp, "operation")
        ->required()
        ->check(CLI::IsMember({"applyP", "gradient", "lpnorm", "seminorm", "ballaverage",
                               "pseudoaverage", "dirichlet"}));
    cmdEval->add_option("--p", evalP, "exponent (lpnorm/seminorm); inf = infinity norm");
    cmdEval->add_option("--x", evalX, "vertex (ballaverage)");
    cmdEval->add_option("--n", evalN, "radius (ballaverage/pseudoaverage)");
    cmdEval->add_option("--room", evalRoom, "room budget (pseudoaverage)");
    cmdEval->add_option("--out-field", evalOutField, "write field-valued results here");

    // ---- fit
    std::string fitIn, fitOut;
    int fitSkip = 1;
    auto* cmdFit = app.add_subcommand("fit", "log-log least-squares on a samples CSV");
    cmdFit->add_option("--in", fitIn, "input CSV")->required();
    cmdFit->add_option("--out", fitOut, "append fitted rows to this CSV");
    cmdFit->add_option("--skip-smallest", fitSkip, "samples to drop from the small end");

    // ---- verify
    std::vector<std::string> verifyOnly;
    std::uint64_t verifySeed = 0x5EEDF1E1Du;
    int verifyParallelism = 1;
    auto* cmdVerify = app.add_subcommand("verify", "run the end-to-end verification table");
    cmdVerify->add_option("--only", verifyOnly, "run only the named checks")->delimiter(',');
    cmdVerify->add_option("--seed", verifySeed, "seed for random test fields");
    cmdVerify->add_option("--parallelism", verifyParallelism, "worker threads for field sweeps")
        ->check(CLI::Range(1, 256));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*cmdGenerate) {
            const WeightedGraph g = genSrc.resolve();
            writeGraph(g, genOut);
            std::printf("generate: %s -> %s (%u vertices, %zu edges)\n",
                        g.info().family.c_str(), genOut.c_str(), g.vertexCount(), g.edgeCount());
        } else if (*cmdVolume) {
            const WeightedGraph g = volSrc.resolve();
            const VertexId x = resolveCenter(g, volCenter);
            const auto samples = volumeSweep(g, x, volRadii);
            emitRows(toRows(samples, "volume", g.info().family,
                            static_cast<int>(g.info().parameter("d", 0)),
                            static_cast<int>(g.info().parameter("generation",
                                                                g.info().parameter("side", 0))),
                            0.0),
                     volOut, false);
            std::string summary = "volume: " + std::to_string(samples.size()) + " samples";
            if (volFit) summary += ", " + describeFit(fitExponent(samples));
            if (!volOut.empty()) summary += " -> " + volOut;
            std::printf("%s\n", summary.c_str());
        } else if (*cmdPoincare) {
            const VicsekModel m = poiSrc.resolveModel();
            std::vector<std::vector<SampleRow>> slots(poiRadii.size());
            std::vector<ScalingSample> sweep(poiRadii.size());
            parallelFor(poiRadii.size(), poiParallelism, [&](std::size_t i) {
                const int r = poiRadii[i];
                const ScalarField cand = poincareCandidate(m, r);
                const double q = poincareQuotient(m.graph, cand, m.center, r, poiP);
                sweep[i] = {static_cast<double>(r), q, "poincare"};
                slots[i].push_back({"poincare", "vicsek", m.dimension, m.generation, poiP,
                                    static_cast<double>(r), q, fieldHash(cand.values)});
                const Ball b = ball(m.graph, m.center, 2 * r);
                for (int t = 0; t < poiRandom; ++t) {
                    SplitMix64 rng(deriveSeed(poiSeed, static_cast<std::uint64_t>(r), 0, t));
                    std::vector<double> vals(m.graph.vertexCount(), 0.0);
                    for (VertexId v : b.members) vals[v] = rng.uniformSigned();
                    const ScalarField f = makeField(m.graph, std::move(vals), b.members);
                    slots[i].push_back({"poincare", "vicsek", m.dimension, m.generation, poiP,
                                        static_cast<double>(r),
                                        poincareQuotient(m.graph, f, m.center, r, poiP),
                                        fieldHash(f.values)});
                }
            });
            std::vector<SampleRow> rows;
            for (const auto& slot : slots) rows.insert(rows.end(), slot.begin(), slot.end());
            emitRows(rows, poiOut, true);
            std::printf("poincare: %zu rows, %s%s\n", rows.size(),
                        describeFit(fitExponent(sweep, poiRadii.size() > 2 ? 1 : 0)).c_str(),
                        poiOut.empty() ? "" : (" -> " + poiOut).c_str());
        } else if (*cmdSobolev) {
            std::vector<SampleRow> rows(sobGens.size());
            std::vector<ScalingSample> sweep(sobGens.size());
            parallelFor(sobGens.size(), sobParallelism, [&](std::size_t i) {
                const VicsekModel m = vicsek(sobSrc.d, sobGens[i]);
                const ScalarField F = extremalField(m, sobGens[i]);
                const double q = sobolevQuotient(m.graph, F, sobP);
                sweep[i] = {m.graph.totalMeasure(), q, "sobolev"};
                rows[i] = {"sobolev", "vicsek", sobSrc.d, sobGens[i], sobP,
                           m.graph.totalMeasure(), q, fieldHash(F.values)};
            });
            emitRows(rows, sobOut, true);
            std::printf("sobolev: %zu rows, %s%s\n", rows.size(),
                        describeFit(fitExponent(sweep, sobGens.size() > 2 ? 1 : 0)).c_str(),
                        sobOut.empty() ? "" : (" -> " + sobOut).c_str());
        } else if (*cmdFk) {
            const VicsekModel m = fkSrc.resolveModel();
            std::vector<SampleRow> rows;
            std::string products;
            for (int n : fkBlocks) {
                const Domain omega = makeDomain(m.graph, centeredBlock(m, n));
                const FaberKrahnResult fk = faberKrahnLambda1(m.graph, omega, fkTol);
                rows.push_back({"faber-krahn", "vicsek", m.dimension, n, 2.0, omega.measure,
                                fk.lambda1, fieldHash(fk.eigenvector.values)});
                products += formatDouble(fk.lambda1 * omega.inradius * omega.measure);
                products += " ";
            }
            emitRows(rows, fkOut, true);
            std::printf("faber-krahn: %zu rows, lambda1*r*mu = %s%s\n", rows.size(),
                        products.c_str(), fkOut.empty() ? "" : ("-> " + fkOut).c_str());
        } else if (*cmdPk) {
            const WeightedGraph g = pkSrc.resolve();
            const VertexId x = resolveCenter(g, pkCenter);
            std::vector<SampleRow> rows;
            for (int n : pkRadii)
                rows.push_back({"pathkernel", g.info().family,
                                static_cast<int>(g.info().parameter("d", 0)),
                                static_cast<int>(g.info().parameter(
                                    "generation", g.info().parameter("side", 0))),
                                pkP, static_cast<double>(n), pathKernelK(g, x, n, pkP), ""});
            emitRows(rows, pkOut, true);
            std::printf("pathkernel: %zu rows%s\n", rows.size(),
                        pkOut.empty() ? "" : (" -> " + pkOut).c_str());
        } else if (*cmdExtremal) {
            const VicsekModel m = vicsek(extSrc.d, extSrc.generation);
            const ScalarField F = extremalField(m, extN);
            writeField(m.graph, F, extOut);
            const auto grad = gradientField(m.graph, F);
            std::printf("extremal: F_%d on vicsek(%d,%d) -> %s (|F|_2=%s, |grad F|_2=%s)\n", extN,
                        extSrc.d, extSrc.generation, extOut.c_str(),
                        formatDouble(lpNorm(m.graph, F.values, 2.0)).c_str(),
                        formatDouble(lpNorm(m.graph, grad, 2.0)).c_str());
        } else if (*cmdWalk) {
            const WeightedGraph g = walkSrc.resolve();
            const VertexId x = resolveCenter(g, walkCenter);
            const auto samples = returnProbability(g, x, walkKmax);
            emitRows(toRows(samples, "return-probability", g.info().family,
                            static_cast<int>(g.info().parameter("d", 0)),
                            static_cast<int>(g.info().parameter("generation",
                                                                g.info().parameter("side", 0))),
                            0.0),
                     walkOut, false);
            std::string summary = "walk: " + std::to_string(samples.size()) + " samples";
            if (walkFit) summary += ", " + describeFit(fitExponent(samples, 0));
            if (!walkOut.empty()) summary += " -> " + walkOut;
            std::printf("%s\n", summary.c_str());
        } else if (*cmdEscape) {
            const WeightedGraph g = escSrc.resolve();
            const VertexId x = resolveCenter(g, escCenter);
            std::vector<ScalingSample> samples(escRadii.size());
            parallelFor(escRadii.size(), escParallelism, [&](std::size_t i) {
                samples[i] = {static_cast<double>(escRadii[i]),
                              escapeTime(g, x, escRadii[i], escTol), "escape"};
            });
            emitRows(toRows(samples, "escape", g.info().family,
                            static_cast<int>(g.info().parameter("d", 0)),
                            static_cast<int>(g.info().parameter("generation",
                                                                g.info().parameter("side", 0))),
                            0.0),
                     escOut, false);
            std::string summary = "escape: " + std::to_string(samples.size()) + " samples";
            if (escFit) summary += ", " + describeFit(fitExponent(samples));
            if (!escOut.empty()) summary += " -> " + escOut;
            std::printf("%s\n", summary.c_str());
        } else if (*cmdEval) {
            const WeightedGraph g = loadGraph(evalGraph);
            const ScalarField f = loadField(g, evalField);
            if (evalOp == "applyP" || evalOp == "gradient" || evalOp == "pseudoaverage") {
                ScalarField out;
                if (evalOp == "applyP") out = applyP(g, f);
                else if (evalOp == "gradient") out = makeField(g, gradientField(g, f));
                else {
                    const int room = evalRoom >= 0 ? evalRoom : evalN + 1;
                    out = pseudoAverageField(g, f, evalN, room);
                }
                if (evalOutField.empty())
                    throw ValidationError("--out-field is required for field-valued ops");
                writeField(g, out, evalOutField);
                std::printf("eval %s -> %s\n", evalOp.c_str(), evalOutField.c_str());
            } else {
                double v = 0.0;
                if (evalOp == "lpnorm") v = lpNorm(g, f.values, evalP);
                else if (evalOp == "seminorm") v = edgeSeminormP(g, f, evalP);
                else if (evalOp == "dirichlet") v = dirichletEnergy(g, f);
                else v = ballAverage(g, f, static_cast<VertexId>(evalX), evalN);
                std::printf("eval %s = %s\n", evalOp.c_str(), formatDouble(v).c_str());
            }
        } else if (*cmdFit) {
            const auto samples = readSamplesCsv(fitIn);
            const FitResult fit = fitExponent(samples, fitSkip);
            std::printf("fit: %s\n", describeFit(fit).c_str());
            if (!fitOut.empty()) {
                const bool fresh = !std::ifstream(fitOut).good();
                std::ofstream os(fitOut, std::ios::app);
                if (!os) throw ValidationError("cannot open " + fitOut);
                if (fresh) os << "experiment,family,d,k_or_gen,p,scale,value\n";
                os << "fit:slope,,0,0,0," << fit.count << ',' << formatDouble(fit.slope) << '\n';
                os << "fit:intercept,,0,0,0," << fit.count << ','
                   << formatDouble(fit.intercept) << '\n';
                os << "fit:rsquared,,0,0,0," << fit.count << ',' << formatDouble(fit.rSquared)
                   << '\n';
            }
        } else if (*cmdVerify) {
            const auto results = runAcceptanceChecks(verifyOnly, verifySeed, verifyParallelism);
            bool all = true;
            double total = 0.0;
            for (const auto& r : results) {
                std::printf("[%s] %-20s %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                            r.detail.c_str(), r.seconds);
                all &= r.pass;
                total += r.seconds;
            }
            std::printf("verify: %zu checks, %s, %.1fs total\n", results.size(),
                        all ? "all passed" : "FAILURES PRESENT", total);
            return all ? 0 : 1;
        }
    } catch (const NoConvergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
