// Copyright 2026-present the qlga project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qlga/d1q3_binary.hpp"
#include "qlga/d1q3_super.hpp"
#include "qlga/decompose.hpp"
#include "qlga/hpp2d.hpp"
#include "qlga/kernels.hpp"
#include "qlga/pipeline.hpp"
#include "qlga/resources.hpp"
#include "qlga/rng.hpp"
#include "qlga/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qlga;

namespace {

struct CommonOpts {
    std::string model = "d1q3-binary";
    int sites = 512;
    int steps = 16;
    std::uint64_t shots = 0;
    bool exact = false;
    std::string noise = "none";
    double p1 = -1, p2 = -1, pread = -1;
    int ensemble = 1;
    int block = 32;
    std::uint64_t seed = 1;
    std::string region = "0.375:0.625";
    double p_inside = 0.95;
    double p_outside = 0.05;
    bool shared_initial = false;
    std::string out_dir = "out";
    std::string init_csv;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--model", o.model, "d1q3-binary | d1q3-super | hpp");
    cmd->add_option("--sites", o.sites, "lattice sites (per side for hpp), power of two");
    cmd->add_option("--steps", o.steps, "time steps");
    cmd->add_option("--shots", o.shots, "shots per step (0 or --exact: infinite-shot decode)");
    cmd->add_flag("--exact", o.exact, "infinite-shot decode from the exact state support");
    cmd->add_option("--noise", o.noise, "none | low | mid | high");
    cmd->add_option("--p1", o.p1, "override: 1-qubit depolarizing rate");
    cmd->add_option("--p2", o.p2, "override: 2-qubit depolarizing rate");
    cmd->add_option("--pread", o.pread, "override: readout flip rate");
    cmd->add_option("--ensemble", o.ensemble, "independent runs to average");
    cmd->add_option("--block", o.block, "sub-lattice block size for mass profiles");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--region", o.region, "pulse region as start:end domain fractions");
    cmd->add_option("--p-inside", o.p_inside, "occupancy probability inside the region");
    cmd->add_option("--p-outside", o.p_outside, "occupancy probability outside the region");
    cmd->add_flag("--shared-initial", o.shared_initial, "all members share one initial field");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--init-csv", o.init_csv, "explicit initial occupancy CSV");
}

ExperimentConfig to_config(const CommonOpts& o) {
    ExperimentConfig cfg;
    cfg.model = model_kind_from_name(o.model);
    cfg.sites = o.sites;
    cfg.steps = o.steps;
    cfg.shots = o.exact ? 0 : o.shots;
    cfg.noise_name = o.noise;
    cfg.noise = noise_preset(noise_level_from_name(o.noise));
    if (o.p1 >= 0) cfg.noise.p1 = o.p1;
    if (o.p2 >= 0) cfg.noise.p2 = o.p2;
    if (o.pread >= 0) cfg.noise.p_readout = o.pread;
    cfg.ensemble = o.ensemble;
    cfg.block = o.block;
    cfg.seed = o.seed;
    cfg.shared_initial = o.shared_initial;
    cfg.initial.p_inside = o.p_inside;
    cfg.initial.p_outside = o.p_outside;
    std::size_t colon = o.region.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("region must look like start:end");
    cfg.initial.region_start = std::stod(o.region.substr(0, colon));
    cfg.initial.region_end = std::stod(o.region.substr(colon + 1));
    if (!o.init_csv.empty()) {
        std::ifstream in(o.init_csv);
        if (!in) throw std::invalid_argument("cannot read " + o.init_csv);
        std::stringstream buf;
        buf << in.rdbuf();
        cfg.initial.kind = InitialCondition::Kind::explicit_field;
        cfg.initial.explicit_field = lattice_from_csv(buf.str());
    }
    cfg.validate();
    return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

json config_json(const ExperimentConfig& cfg) {
    return json{{"model", model_kind_name(cfg.model)},
                {"sites", cfg.sites},
                {"steps", cfg.steps},
                {"shots", cfg.shots},
                {"noise", cfg.noise_name},
                {"p1", cfg.noise.p1},
                {"p2", cfg.noise.p2},
                {"pread", cfg.noise.p_readout},
                {"ensemble", cfg.ensemble},
                {"block", cfg.block},
                {"seed", cfg.seed},
                {"region_start", cfg.initial.region_start},
                {"region_end", cfg.initial.region_end},
                {"p_inside", cfg.initial.p_inside},
                {"p_outside", cfg.initial.p_outside},
                {"shared_initial", cfg.shared_initial},
                {"qubits", cfg.qubits()}};
}

void write_metadata(const fs::path& dir, const std::string& command, const ExperimentConfig& cfg,
                    const ExperimentResult* res, const std::vector<std::string>& files) {
    json meta;
    meta["command"] = command;
    meta["config"] = config_json(cfg);
    meta["master_seed"] = cfg.seed;
    meta["kernel"] = kern::active_ops().name;
    meta["files"] = files;
    if (res != nullptr) {
        meta["member_seeds"] = res->quantum.member_seeds;
        meta["member_flag_rate"] = res->quantum.member_flag_rate;
    }
    write_file(dir / "metadata.json", meta.dump(2) + "\n");
}

std::string command_echo(const ExperimentConfig& cfg, const std::string& sub) {
    std::ostringstream os;
    os << "qlga " << sub << " --model " << model_kind_name(cfg.model) << " --sites " << cfg.sites
       << " --steps " << cfg.steps;
    if (cfg.shots == 0) os << " --exact";
    else os << " --shots " << cfg.shots;
    os << " --noise " << cfg.noise_name << " --ensemble " << cfg.ensemble << " --block "
       << cfg.block << " --seed " << cfg.seed;
    return os.str();
}

Circuit build_stage(const ExperimentConfig& cfg, const std::string& stage) {
    auto initial_field = [&]() {
        return generate_initial(cfg.initial, cfg.sites, cfg.model,
                                derive_seed(derive_seed(cfg.seed, 0), 1));
    };
    if (cfg.model == ModelKind::hpp) {
        HppLayout lay(cfg.sites);
        if (stage == "init") return build_initialization_hpp(lay, initial_field());
        if (stage == "collision") return build_collision_hpp(lay);
        if (stage == "mapping") return build_mapping_hpp(lay);
        if (stage == "propagation") return build_propagation_hpp(lay);
        if (stage == "step") {
            Circuit c = build_dynamics_hpp(lay);
            c.measured = lay.measured();
            return c;
        }
        throw std::invalid_argument("unknown hpp stage: " + stage);
    }
    D1q3Layout lay(std::countr_zero(static_cast<unsigned>(cfg.sites)));
    bool super = cfg.model == ModelKind::d1q3_super;
    if (stage == "init") {
        if (super)
            throw std::invalid_argument("the superposition variant loads its state directly");
        return build_initialization(lay, initial_field());
    }
    if (stage == "collision") return super ? build_collision_super(lay) : build_collision(lay);
    if (stage == "mapping") return build_mapping(lay, MappingVariant::swap);
    if (stage == "mapping-nonswap") return build_mapping(lay, MappingVariant::nonswap);
    if (stage == "propagation")
        return super ? build_propagation_super(lay) : build_propagation(lay);
    if (stage == "step") {
        Circuit c(lay.reg);
        if (super) {
            c.append(build_collision_super(lay));
            c.append(build_propagation_super(lay));
            c.measured = super_measured(lay);
        } else {
            c = build_dynamics(lay);
            c.measured = lay.measured();
        }
        return c;
    }
    throw std::invalid_argument("unknown stage: " + stage);
}

int cmd_run(const CommonOpts& opts, const std::string& dump_stage) {
    ExperimentConfig cfg = to_config(opts);
    fs::create_directories(opts.out_dir);
    std::vector<std::string> files;
    if (!dump_stage.empty()) {
        Circuit c = build_stage(cfg, dump_stage);
        write_file(fs::path(opts.out_dir) / ("circuit_" + dump_stage + ".txt"), circuit_to_text(c));
        files.push_back("circuit_" + dump_stage + ".txt");
    }
    ExperimentResult res = run_experiment(cfg);
    write_file(fs::path(opts.out_dir) / "profile.csv",
               profile_series_csv(cfg, res.quantum, res.classical));
    files.push_back("profile.csv");
    write_file(fs::path(opts.out_dir) / "occupancy_final.csv",
               "# " + config_echo(cfg) + "\n" + lattice_to_csv(res.final_quantum));
    files.push_back("occupancy_final.csv");
    write_metadata(opts.out_dir, command_echo(cfg, "run"), cfg, &res, files);
    std::cout << "wrote " << opts.out_dir << "/profile.csv (" << res.quantum.bins() << " bins, "
              << cfg.steps << " steps)\n";
    return 0;
}

int cmd_compare(const CommonOpts& opts, std::vector<int> snapshots) {
    ExperimentConfig cfg = to_config(opts);
    fs::create_directories(opts.out_dir);
    ExperimentResult res = run_experiment(cfg);
    std::vector<std::string> files{"profile.csv"};
    write_file(fs::path(opts.out_dir) / "profile.csv",
               profile_series_csv(cfg, res.quantum, res.classical));
    if (snapshots.empty())
        for (int k = 0; k <= 4; ++k) snapshots.push_back(cfg.steps * k / 4);
    for (int t : snapshots) {
        if (t < 0 || t > cfg.steps) throw std::invalid_argument("snapshot step out of range");
        std::string name = "profile_t" + std::to_string(t) + ".svg";
        // quantum in blue, classical in red
        std::string svg = svg_line_chart(
            "block mass, t = " + std::to_string(t),
            {{"QLGA", "#1f4fd8", res.quantum.mass[static_cast<std::size_t>(t)]},
             {"LGA", "#d82f2f", res.classical.mass[static_cast<std::size_t>(t)]}});
        svg += "<!-- " + config_echo(cfg) + " -->\n";
        write_file(fs::path(opts.out_dir) / name, svg);
        files.push_back(name);
    }
    write_metadata(opts.out_dir, command_echo(cfg, "compare"), cfg, &res, files);
    std::cout << "final-step L1(quantum, classical) = "
              << l1_distance(res.quantum.mass.back(), res.classical.mass.back()) << "\n";
    std::cout << "wrote " << files.size() << " files to " << opts.out_dir << "\n";
    return 0;
}

int cmd_noise_sweep(const CommonOpts& opts, std::vector<std::string> levels,
                    std::vector<std::uint64_t> shots_list) {
    if (levels.empty()) levels = {"low", "mid", "high"};
    if (shots_list.empty()) shots_list = {800, 3000, 100000};
    CommonOpts base = opts;
    base.exact = true;
    base.noise = "none";
    ExperimentConfig ref_cfg = to_config(base);
    fs::create_directories(opts.out_dir);
    ExperimentResult ref = run_experiment(ref_cfg);

    std::ostringstream summary;
    summary << "# qlga noise sweep v1\n# " << config_echo(ref_cfg) << "\n";
    summary << "level,shots,l1_mass,l1_freq,junk_mean,flagged_member_fraction\n";
    std::vector<std::string> files{"summary.csv"};
    for (const std::string& level : levels) {
        for (std::uint64_t shots : shots_list) {
            CommonOpts cell_opts = opts;
            cell_opts.noise = level;
            cell_opts.shots = shots;
            cell_opts.exact = false;
            ExperimentConfig cfg = to_config(cell_opts);
            ExperimentResult res = run_experiment(cfg);
            std::string name = "profile_" + level + "_" + std::to_string(shots) + ".csv";
            write_file(fs::path(opts.out_dir) / name,
                       profile_series_csv(cfg, res.quantum, res.classical));
            files.push_back(name);
            double l1_mass = l1_distance(res.quantum.mass.back(), ref.quantum.mass.back());
            double l1_freq = l1_distance(res.quantum.freq_mass.back(), ref.quantum.mass.back());
            double junk_mean = 0.0;
            for (double j : res.quantum.junk) junk_mean += j;
            junk_mean /= static_cast<double>(res.quantum.junk.size());
            summary << level << ',' << shots << ',' << l1_mass << ',' << l1_freq << ','
                    << junk_mean << ',' << res.quantum.member_flag_rate << '\n';
            std::cout << level << " @ " << shots << " shots: L1(mass) = " << l1_mass
                      << ", L1(freq) = " << l1_freq
                      << ", flagged members = " << res.quantum.member_flag_rate << "\n";
        }
    }
    write_file(fs::path(opts.out_dir) / "summary.csv", summary.str());
    write_metadata(opts.out_dir, command_echo(ref_cfg, "noise-sweep"), ref_cfg, &ref, files);
    return 0;
}

int cmd_resources(const std::string& model, int n_lo, int n_hi, const std::string& out_dir) {
    if (n_lo < 2 || n_hi < n_lo) throw std::invalid_argument("need 2 <= n_lo <= n_hi");
    std::ostringstream csv;
    csv << "# qlga resources v1\n# qlga resources --model " << model << " --n " << n_lo << ":"
        << n_hi << "\nmodel,n,sites,qubits,stage,cx,one_qubit,depth,ancilla\n";
    struct Totals {
        int n;
        std::int64_t collision_cx, mapping_cx, total_cx;
    };
    std::vector<Totals> totals;
    auto report_stage = [&](const std::string& name, const Circuit& stage, int n, int sites,
                            int qubits) {
        Circuit native = decompose(stage);
        ResourceReport r = resource_report(native);
        csv << model << ',' << n << ',' << sites << ',' << qubits << ',' << name << ','
            << r.cx_count << ',' << r.one_qubit_count << ',' << r.depth << ',' << r.ancilla_used
            << '\n';
        std::cout << "  " << name << ": cx=" << r.cx_count << " 1q=" << r.one_qubit_count
                  << " depth=" << r.depth << " ancilla=" << r.ancilla_used << "\n";
        return r.cx_count;
    };
    for (int n = n_lo; n <= n_hi; ++n) {
        Totals t{n, 0, 0, 0};
        if (model == "hpp") {
            if (n % 2 != 0) continue;  // square lattice, even qubit count only
            int side = 1 << (n / 2);
            HppLayout lay(side);
            std::cout << "hpp n=" << n << " (" << side << "x" << side
                      << " sites, qubits=" << lay.total_qubits() << ")\n";
            t.collision_cx = report_stage("collision", build_collision_hpp(lay), n, lay.sites(),
                                          lay.total_qubits());
            t.mapping_cx = report_stage("mapping", build_mapping_hpp(lay), n, lay.sites(),
                                        lay.total_qubits());
            t.total_cx = t.collision_cx + t.mapping_cx +
                         report_stage("propagation", build_propagation_hpp(lay), n, lay.sites(),
                                      lay.total_qubits());
            report_stage("step", build_dynamics_hpp(lay), n, lay.sites(), lay.total_qubits());
        } else if (model == "d1q3" || model == "d1q3-binary") {
            D1q3Layout lay(n);
            std::cout << "d1q3 n=" << n << " (" << lay.sites()
                      << " sites, qubits=" << lay.total_qubits() << ")\n";
            t.collision_cx = report_stage("collision", build_collision(lay), n, lay.sites(),
                                          lay.total_qubits());
            t.mapping_cx =
                report_stage("mapping", build_mapping(lay), n, lay.sites(), lay.total_qubits());
            t.total_cx = t.collision_cx + t.mapping_cx +
                         report_stage("propagation", build_propagation(lay), n, lay.sites(),
                                      lay.total_qubits());
            report_stage("step", build_dynamics(lay), n, lay.sites(), lay.total_qubits());
        } else {
            throw std::invalid_argument("resources: model must be d1q3 or hpp");
        }
        totals.push_back(t);
    }
    if (totals.size() >= 2) {
        for (std::size_t i = 1; i < totals.size(); ++i) {
            if (totals[i].collision_cx != totals[0].collision_cx ||
                totals[i].mapping_cx != totals[0].mapping_cx)
                throw std::runtime_error("collision/mapping CX counts are not constant in n");
        }
        std::cout << "collision and mapping CX counts constant in n: yes\n";
        double slope = static_cast<double>(totals.back().total_cx - totals.front().total_cx) /
                       static_cast<double>(totals.back().n - totals.front().n);
        double intercept = static_cast<double>(totals.front().total_cx) -
                           slope * static_cast<double>(totals.front().n);
        std::cout << "one-step dynamics CX fit: " << slope << " * n + " << intercept
                  << " (reference parallel-shift formula: 15 (n - 6) + 149)\n";
    }
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_file(fs::path(out_dir) / "resources.csv", csv.str());
        std::cout << "wrote " << out_dir << "/resources.csv\n";
    }
    return 0;
}

int cmd_dump_circuit(const CommonOpts& opts, const std::string& stage, bool native) {
    CommonOpts tweaked = opts;
    tweaked.exact = true;
    ExperimentConfig cfg = to_config(tweaked);
    Circuit c = build_stage(cfg, stage);
    if (native) c = decompose(c);
    std::cout << "# " << model_kind_name(cfg.model) << " " << stage << " sites=" << cfg.sites
              << (native ? " decomposed" : "") << "\n";
    std::cout << "# layout:";
    for (const auto& [name, width] : c.layout.blocks()) std::cout << ' ' << name << '=' << width;
    std::cout << "\n" << circuit_to_text(c);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum lattice-gas automata simulation engine"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; flags override");

    CommonOpts run_opts;
    std::string run_dump;
    CLI::App* run = app.add_subcommand("run", "run one experiment and write profile.csv");
    add_common(run, run_opts);
    run->add_option("--dump-circuit", run_dump, "also dump a stage circuit (init|collision|...)");

    CommonOpts cmp_opts;
    cmp_opts.steps = 160;
    std::vector<int> cmp_snapshots;
    CLI::App* cmp =
        app.add_subcommand("compare", "quantum vs classical diffusion profiles with SVG overlays");
    add_common(cmp, cmp_opts);
    cmp->add_option("--snapshots", cmp_snapshots, "steps to plot (default quartiles)");

    CommonOpts sweep_opts;
    sweep_opts.sites = 32;
    sweep_opts.steps = 8;
    sweep_opts.ensemble = 15;
    sweep_opts.block = 2;
    std::vector<std::string> sweep_levels;
    std::vector<std::uint64_t> sweep_shots;
    CLI::App* sweep = app.add_subcommand("noise-sweep", "grid of noise levels x shot counts");
    add_common(sweep, sweep_opts);
    sweep->add_option("--levels", sweep_levels, "noise levels (default low mid high)");
    sweep->add_option("--shots-list", sweep_shots, "shot counts (default 800 3000 100000)");

    std::string res_model = "d1q3";
    std::string res_range = "6:11";
    std::string res_out;
    CLI::App* res = app.add_subcommand("resources", "per-stage gate counts after decomposition");
    res->add_option("--model", res_model, "d1q3 | hpp");
    res->add_option("--n", res_range, "lattice-qubit range lo:hi");
    res->add_option("--out", res_out, "optional output directory for resources.csv");

    CommonOpts dump_opts;
    dump_opts.sites = 16;
    std::string dump_stage = "step";
    bool dump_native = false;
    CLI::App* dump = app.add_subcommand("dump-circuit", "print a stage circuit as text");
    add_common(dump, dump_opts);
    dump->add_option("--stage", dump_stage,
                     "init|collision|mapping|mapping-nonswap|propagation|step");
    dump->add_flag("--decompose", dump_native, "lower to the {1q, CX} native set first");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(run_opts, run_dump);
        if (cmp->parsed()) return cmd_compare(cmp_opts, cmp_snapshots);
        if (sweep->parsed()) return cmd_noise_sweep(sweep_opts, sweep_levels, sweep_shots);
        if (res->parsed()) {
            std::size_t colon = res_range.find(':');
            int lo = std::stoi(res_range.substr(0, colon));
            int hi = colon == std::string::npos ? lo : std::stoi(res_range.substr(colon + 1));
            return cmd_resources(res_model, lo, hi, res_out);
        }
        if (dump->parsed()) return cmd_dump_circuit(dump_opts, dump_stage, dump_native);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
