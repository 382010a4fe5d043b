// hallgrp: command-line front end.
//
// Exit status: 0 analysis completed (whatever the verdict), 2 input or
// argument error, 3 internal invariant violation.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hallgrp.hpp"
#include "hallgrp/report.hpp"

namespace {

using namespace hallgrp;

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_invariant = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  int status = exit_ok;
  std::string out;
  std::string err;
};

template <class Fn>
Outcome guarded(const std::string& label, Fn&& fn) {
  Outcome o;
  try {
    o.out = fn();
  } catch (const hallgrp::error& e) {
    o.status = e.code() == errc::internal_invariant_violation ? exit_invariant : exit_input;
    o.err = label + ": " + e.what() + "\n";
  } catch (const std::exception& e) {
    o.status = exit_input;
    o.err = label + ": " + e.what() + "\n";
  }
  return o;
}

int emit(const Outcome& o) {
  std::cout << o.out;
  std::cerr << o.err;
  return o.status;
}

int run_classify(const std::vector<std::string>& paths, std::size_t cap, unsigned jobs) {
  std::vector<Outcome> results(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < paths.size();) {
      results[i] = guarded(paths[i], [&] { return classify_report(parse_instance(read_file(paths[i])), cap); });
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(paths.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int status = exit_ok;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (paths.size() > 1) std::cout << (i ? "\n" : "") << "file: " << paths[i] << "\n";
    status = std::max(status, emit(results[i]));
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transvection subgroups of finite symplectic similitude groups"};
  app.set_version_flag("--version", std::string(hallgrp::version));
  app.require_subcommand(1);

  std::vector<std::string> paths;
  std::size_t cap = ElementTable::default_cap;
  unsigned jobs = 1;
  auto* classify = app.add_subcommand("classify", "Enumerate <generators> and classify it");
  classify->add_option("paths", paths, "Instance files")->required()->check(CLI::ExistingFile);
  classify->add_option("--cap", cap, "Maximum group order to enumerate")->check(CLI::PositiveNumber);
  classify->add_option("--jobs", jobs, "Instances processed in parallel")->check(CLI::Range(1u, 64u));

  std::string single;
  auto* amplitude = app.add_subcommand("amplitude", "Amplitude of the instance's E^x representation");
  amplitude->add_option("path", single, "Instance file")->required();

  auto* toric = app.add_subcommand("toric", "Drop and toric dimension of each generator");
  toric->add_option("path", single, "Instance file")->required();

  std::size_t dim = 0;
  std::uint32_t prime = 0;
  std::size_t order_cap = ElementTable::default_cap;
  auto* sp_order = app.add_subcommand("sp-order", "Order of Sp(dim, prime): closed form and enumeration");
  sp_order->add_option("--dim", dim, "Dimension")->required();
  sp_order->add_option("--prime", prime, "Prime")->required();
  sp_order->add_option("--cap", order_cap, "Enumerate only up to this order")->check(CLI::PositiveNumber);

  RandomInstanceParams prm;
  auto* gen = app.add_subcommand("gen-random", "Write a random planted block-group instance");
  gen->add_option("--blocks", prm.blocks, "Number of blocks s")->required();
  gen->add_option("--dimw", prm.block_dim, "Block dimension")->required();
  gen->add_option("--prime", prm.prime, "Prime")->required();
  gen->add_option("--seed", prm.seed, "Random seed");
  gen->add_flag("--with-swap", prm.swap, "Add the cyclic block shift");
  gen->add_flag("--with-transvection", prm.transvection, "Add a transvection of the first block");
  gen->add_flag("--with-similitude", prm.similitude, "Add a similitude with multiplier != 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  if (*classify) return run_classify(paths, cap, jobs);
  if (*amplitude) {
    return emit(guarded(single, [&] { return amplitude_report(parse_instance(read_file(single))); }));
  }
  if (*toric) return emit(guarded(single, [&] { return toric_report(parse_instance(read_file(single))); }));
  if (*sp_order) return emit(guarded("sp-order", [&] { return sp_order_report(dim, prime, order_cap); }));
  if (*gen) return emit(guarded("gen-random", [&] { return serialize(gen_random(prm)); }));
  return exit_input;
}
