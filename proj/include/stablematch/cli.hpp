#pragma once

// Command-line front end. run() is the whole program minus process setup, so
// tests can drive it with string streams.

#include <atomic>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stablematch/errors.hpp"
#include "stablematch/instance.hpp"
#include "stablematch/lattice.hpp"
#include "stablematch/polytope.hpp"
#include "stablematch/poset.hpp"
#include "stablematch/rational.hpp"
#include "stablematch/rotations.hpp"
#include "stablematch/stability.hpp"
#include "stablematch/weights.hpp"

namespace stablematch::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,
  kLimit = 2,
  kIo = 3,
  kInterrupted = 130,
};

/// Set asynchronously (e.g. from a SIGINT handler); long enumerations poll it.
inline std::atomic<bool>& interrupt_flag() {
  static std::atomic<bool> flag{false};
  return flag;
}

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Validation: return kInvalid;
    case ErrorKind::CapExceeded:
    case ErrorKind::Infeasible: return kLimit;
    case ErrorKind::Io: return kIo;
  }
  return kInvalid;
}

namespace detail {

struct Interrupted {
  std::uint64_t seen;
};

inline Matching load_single_matching(const PreferenceInstance& inst, const std::string& path) {
  auto list = parse_matching_list(inst, read_text_file(path));
  if (list.size() != 1)
    throw_validation(path + ": expected exactly one matching, found " + std::to_string(list.size()));
  return std::move(list.front());
}

inline void print_verify(std::ostream& out, const PreferenceInstance& inst, const FractionalVector& x) {
  const auto report = check_polytope_membership(inst, x);
  out << "member " << (report.member ? "yes" : "no") << '\n';
  for (const auto& c : report.violated()) {
    out << "violated " << to_string(c.kind) << ' ';
    if (c.kind == InequalityKind::Degree)
      out << inst.vertex_id(c.element);
    else
      out << inst.edge_id(c.element);
    out << " lhs " << format_rational(c.lhs) << '\n';
  }
  if (!report.member) return;
  const auto support = check_support_equalities(inst, x);
  out << "support-equalities " << (support.holds ? "yes" : "no") << '\n';
  for (const auto& c : support.checks)
    if (!c.holds)
      out << "violated support " << inst.edge_id(c.edge) << " i " << format_rational(c.at_i) << " j "
          << format_rational(c.at_j) << " gamma " << format_rational(c.gamma) << '\n';
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stable matchings of bipartite preference graphs", "stablematch"};
  app.require_subcommand(1);

  std::string file;
  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "instance file")->required();
    return sub;
  };

  auto* validate = add("validate", "check an instance file");
  auto* solve = add("solve", "deferred acceptance");
  std::string side = "I";
  solve->add_option("--side", side, "proposing side")->check(CLI::IsMember({"I", "J"}));

  std::uint64_t max_count = 1000000;
  auto* enumerate = add("enumerate", "list every stable matching");
  enumerate->add_option("--max", max_count, "give up beyond this many matchings");
  auto* count = add("count", "count stable matchings");
  count->add_option("--max", max_count, "give up beyond this many matchings");

  auto* rotations = add("rotations", "list rotations");
  auto* poset = add("poset", "arcs of the rotation digraph");
  bool dot = false;
  poset->add_flag("--dot", dot, "Graphviz output");

  auto* minweight = add("minweight", "minimum-weight stable matching");
  bool egalitarian = false;
  std::string weights_file;
  auto* egal_opt = minweight->add_flag("--egalitarian", egalitarian, "sum of ranks at both ends");
  auto* weights_opt = minweight->add_option("--weights", weights_file, "weight file");
  egal_opt->excludes(weights_opt);

  auto* median_cmd = add("median", "median of a family of stable matchings");
  std::string family_file;
  std::optional<std::size_t> k_choice;
  median_cmd->add_option("--matchings", family_file, "matching list file")->required();
  median_cmd->add_option("--k", k_choice, "take the k-th choice instead of the middle one");

  std::string a_file, b_file;
  auto* meet_cmd = add("meet", "lattice meet of two stable matchings");
  auto* join_cmd = add("join", "lattice join of two stable matchings");
  for (auto* sub : {meet_cmd, join_cmd}) {
    sub->add_option("--a", a_file, "matching file")->required();
    sub->add_option("--b", b_file, "matching file")->required();
  }

  auto* verify = add("verify", "polytope membership of a fractional vector");
  std::string x_file;
  verify->add_option("--x", x_file, "fractional vector file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    const auto inst = load_instance(file);
    auto& flag = interrupt_flag();

    if (*validate) {
      out << "valid: " << inst.num_i() << " I-vertices, " << inst.num_j() << " J-vertices, " << inst.num_edges()
          << " edges\n";
    } else if (*solve) {
      out << format_edges(inst, deferred_acceptance(inst, side == "I" ? Side::I : Side::J)) << '\n';
    } else if (*enumerate || *count) {
      const auto g = build_digraph(inst);
      std::uint64_t seen = 0;
      const bool listing = enumerate->parsed();
      const bool complete = for_each_ideal(g, [&](const Ideal& s) {
        if (flag.load()) throw detail::Interrupted{seen};
        if (seen >= max_count) return false;
        ++seen;
        if (listing) out << format_edges(inst, ideal_to_matching(g, s)) << '\n';
        return true;
      });
      if (!complete) {
        err << "error: more than " << max_count << " stable matchings\n";
        return kLimit;
      }
      if (!listing) out << seen << '\n';
    } else if (*rotations) {
      const auto rs = rotation_set(inst);
      for (std::size_t r = 0; r < rs.size(); ++r)
        out << 'R' << r << ": " << format_sequence(inst, rs[r].cycle()) << '\n';
    } else if (*poset) {
      const auto g = build_digraph(inst);
      if (dot) {
        out << to_dot(inst, g);
      } else {
        for (const auto& a : g.arcs()) out << 'R' << a.from << " -> R" << a.to << ' ' << arc_label(a.kinds) << '\n';
      }
    } else if (*minweight) {
      WeightFunction c;
      if (!egalitarian && weights_file.empty()) throw_validation("minweight needs --egalitarian or --weights");
      if (egalitarian) {
        c = egalitarian_weights(inst);
      } else {
        auto parsed = parse_weights(inst, read_text_file(weights_file));
        for (const auto& w : parsed.warnings) err << "warning: " << w << '\n';
        c = std::move(parsed.weights);
      }
      const auto best = min_weight_stable_matching(inst, c);
      out << format_edges(inst, best.matching) << '\n' << "cost " << format_rational(best.cost) << '\n';
    } else if (*median_cmd) {
      const auto family = parse_matching_list(inst, read_text_file(family_file));
      const auto m = k_choice ? generalized_median(inst, family, *k_choice) : median(inst, family);
      out << format_edges(inst, m) << '\n';
    } else if (*meet_cmd || *join_cmd) {
      const auto a = detail::load_single_matching(inst, a_file);
      const auto b = detail::load_single_matching(inst, b_file);
      out << format_edges(inst, *meet_cmd ? meet(inst, a, b) : join(inst, a, b)) << '\n';
    } else if (*verify) {
      detail::print_verify(out, inst, parse_fractional_vector(inst, read_text_file(x_file)));
    }
  } catch (const detail::Interrupted& stop) {
    out.flush();
    err << "interrupted after " << stop.seen << " stable matchings\n";
    return kInterrupted;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kOk;
}

}  // namespace stablematch::cli
