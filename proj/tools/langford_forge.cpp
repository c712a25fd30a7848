// langford-forge: construct, enumerate, count and verify Skolem/Langford
// sequences and the digraph families behind them.
//
// Exit codes: 0 success, 1 validation failure (JSON error on stderr),
// 2 usage error. All stdout JSON carries "format": 1.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "forge/forge.hpp"

namespace {

using nlohmann::json;

json error_json(const forge::Error& e) {
  json detail{{"message", e.message()}};
  for (const auto& [key, value] : e.detail()) detail[key] = value;
  return json{{"error", forge::errc_name(e.code())}, {"detail", detail}};
}

std::string read_sequence_line(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (!path.empty()) {
    file.open(path);
    if (!file)
      throw forge::Error(forge::Errc::BadFormat, "cannot open input file: " + path);
    in = &file;
  }
  std::string line;
  while (std::getline(*in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
  }
  throw forge::Error(forge::Errc::BadFormat, "no sequence line on input");
}

forge::CensusGuards guards_from_env() {
  forge::CensusGuards g;
  if (const char* env = std::getenv("LANGFORD_FORGE_GUARD")) {
    try {
      g.max_outputs = forge::BoundValue(std::string(env));
    } catch (...) {
      throw forge::Error(forge::Errc::BadFormat,
                         "LANGFORD_FORGE_GUARD must be an integer");
    }
  }
  return g;
}

json digraph_line(const forge::Digraph& g) {
  json j = forge::digraph_to_json(g);
  j["format"] = 1;
  return j;
}

// images for a general digraph product; every arc (loops included, keyed
// "u,u") needs an image, no special loop handling
forge::ArcAssignment resolve_h_for_digraph(const std::string& spec,
                                           const forge::Digraph& base, int n) {
  auto family = forge::enumerate_RSn(n);
  auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);

  forge::ArcAssignment h(base, n);
  if (kind == "constant") {
    std::size_t idx = std::stoull(arg);
    if (idx >= family.size())
      throw forge::Error(forge::Errc::BadIndex, "index outside the enumerated family")
          .with("index", static_cast<long long>(idx))
          .with("family_size", static_cast<long long>(family.size()));
    base.for_each_arc([&](int u, int v) { h.assign({u, v}, family[idx].arcs); });
    return h;
  }
  if (kind == "random") {
    if (family.empty())
      throw forge::Error(forge::Errc::BadIndex, "family is empty, nothing to draw from");
    std::mt19937_64 rng(std::stoull(arg));
    base.for_each_arc([&](int u, int v) { h.assign({u, v}, family[rng() % family.size()].arcs); });
    return h;
  }
  if (kind == "table") {
    std::ifstream in(arg);
    if (!in)
      throw forge::Error(forge::Errc::BadFormat, "cannot open h table file: " + arg);
    json table;
    try {
      in >> table;
    } catch (const json::exception& e) {
      throw forge::Error(forge::Errc::BadFormat,
                         std::string("h table is not valid JSON: ") + e.what());
    }
    if (!table.is_object())
      throw forge::Error(forge::Errc::BadFormat, "h table must be a JSON object");
    for (const auto& [key, entry] : table.items()) {
      auto comma = key.find(',');
      if (comma == std::string::npos)
        throw forge::Error(forge::Errc::BadFormat, "arc key must look like \"u,v\"");
      int u = std::stoi(key.substr(0, comma));
      int v = std::stoi(key.substr(comma + 1));
      forge::Digraph img = entry.is_object() && entry.contains("index")
                               ? [&] {
                                   if (entry["n"].get<int>() != n)
                                     throw forge::Error(forge::Errc::OrderMismatch,
                                                        "entry family order differs from n");
                                   std::size_t idx = entry["index"].get<std::size_t>();
                                   if (idx >= family.size())
                                     throw forge::Error(forge::Errc::BadIndex,
                                                        "index outside the enumerated family");
                                   return family[idx].arcs;
                                 }()
                               : forge::digraph_from_json(entry);
      h.assign({u, v}, img);
    }
    base.for_each_arc([&](int u, int v) {
      if (!h.has_image({u, v}))
        throw forge::Error(forge::Errc::MissingArc, "table leaves a base arc without an image")
            .with("u", u)
            .with("v", v);
    });
    return h;
  }
  throw forge::Error(forge::Errc::BadFormat,
                     "h spec must be constant:INDEX, random:SEED or table:FILE");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skolem/Langford sequence construction via digraph products"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "validate a sequence");
  std::string v_kind;
  int v_defect = 1;
  std::string v_in;
  verify->add_option("--kind", v_kind, "langford|skolem|extended")
      ->required()
      ->check(CLI::IsMember({"langford", "skolem", "extended"}));
  verify->add_option("--defect", v_defect, "defect of a langford sequence");
  verify->add_option("--in", v_in, "input file (default: stdin)");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "list Sn or RSn in canonical order");
  std::string e_family;
  int e_n = 0;
  long long e_index = -1;
  enumerate->add_option("--family", e_family, "Sn|RSn")
      ->required()
      ->check(CLI::IsMember({"Sn", "RSn"}));
  enumerate->add_option("--n", e_n, "order")->required();
  enumerate->add_option("--index", e_index, "emit only the member at this 0-based index");

  // rotations
  auto* rotations = app.add_subcommand("rotations", "cycle labeling and its two rotations");
  int r_n = 0;
  rotations->add_option("--n", r_n, "odd order >= 3")->required();

  // product
  auto* product = app.add_subcommand("product", "digraph product with per-arc images");
  product->set_help_flag("--help", "print help");  // frees -h for the --h option
  std::string p_base, p_h;
  int p_n = 0;
  product->add_option("--base", p_base, "base digraph JSON file")->required();
  product->add_option("--h", p_h, "constant:INDEX | random:SEED | table:FILE")->required();
  product->add_option("--n", p_n, "family order")->required();

  // expand
  auto* expand = app.add_subcommand("expand", "expand a sequence by an odd factor");
  expand->set_help_flag("--help", "print help");
  int x_n = 0, x_defect = 1, x_loop_choice = 1;
  std::string x_h, x_in;
  bool x_permissive = false;
  expand->add_option("--n", x_n, "odd expansion order")->required();
  expand->add_option("--defect", x_defect, "defect of the input sequence");
  expand->add_option("--h", x_h, "constant:INDEX | random:SEED | table:FILE")->required();
  expand->add_option("--loop-choice", x_loop_choice, "loop rotation, 1 or 2")
      ->check(CLI::IsMember({1, 2}));
  expand->add_flag("--permissive", x_permissive,
                   "accept any loop-plus-digons rotation member as the loop image");
  expand->add_option("--in", x_in, "input file (default: stdin)");

  // count
  auto* count = app.add_subcommand("count", "evaluate a counting lower bound");
  std::string c_bound;
  int c_m = 0, c_n = 0, c_defect = 1;
  bool c_trivial = false;
  count->add_option("--bound", c_bound, "which bound to evaluate")
      ->required()
      ->check(CLI::IsMember(
          {"theorem-1-1", "theorem-3-3", "corollary-3-4", "remark", "theorem-4-4"}));
  count->add_option("--m", c_m, "input order")->required();
  count->add_option("--n", c_n, "odd expansion order");
  count->add_option("--defect", c_defect, "input defect (theorem-3-3)");
  count->add_flag("--include-trivial", c_trivial, "count trivial extended sequences too");

  // census
  auto* census = app.add_subcommand("census", "generate every expansion and count it");
  int s_m = 0, s_n = 0, s_defect = 1;
  bool s_extended = false, s_trivial = false, s_print = false;
  census->add_option("--m", s_m, "input order")->required();
  census->add_option("--n", s_n, "odd expansion order")->required();
  census->add_option("--defect", s_defect, "input defect");
  census->add_flag("--extended", s_extended, "census over extended Skolem inputs");
  census->add_flag("--include-trivial", s_trivial, "include trivial extended inputs");
  census->add_flag("--print", s_print, "print every output sequence before the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  // flag-combination checks are usage errors, not validation failures
  if (app.got_subcommand(verify) && v_kind == "skolem" && v_defect != 1) {
    std::cerr << "verify: --defect must be 1 when --kind is skolem\n";
    return 2;
  }
  if (app.got_subcommand(count) && c_bound != "theorem-1-1" && count->count("--n") == 0) {
    std::cerr << "count: --n is required for --bound " << c_bound << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(verify)) {
      auto values = forge::parse_sequence_line(read_sequence_line(v_in));
      json out;
      if (v_kind == "extended") {
        auto s = forge::ExtendedSkolemSeq::validate(values);
        out = {{"format", 1},     {"valid", true},
               {"m", s.order()},  {"zero_pos", s.zero_pos()},
               {"hooked", s.is_hooked()}, {"trivial", s.is_trivial()}};
      } else {
        auto s = forge::LangfordSeq::validate(values, v_defect);
        out = {{"format", 1}, {"valid", true}, {"m", s.order()}, {"d", s.defect()}};
      }
      std::cout << out.dump() << "\n";
      return 0;
    }

    if (app.got_subcommand(enumerate)) {
      auto emit = [&](std::size_t i, const forge::Digraph& g, const std::vector<int>& perm,
                      const char* perm_key) {
        if (e_index >= 0 && static_cast<long long>(i) != e_index) return;
        json j = digraph_line(g);
        j[perm_key] = perm;
        std::cout << j.dump() << "\n";
      };
      if (e_family == "Sn") {
        auto members = forge::enumerate_Sn(e_n);
        if (e_index >= static_cast<long long>(members.size()))
          throw forge::Error(forge::Errc::BadIndex, "index outside the enumerated family")
              .with("index", e_index)
              .with("family_size", static_cast<long long>(members.size()));
        for (std::size_t i = 0; i < members.size(); ++i)
          emit(i, members[i].to_digraph(), members[i].perm(), "perm");
      } else {
        auto members = forge::enumerate_RSn(e_n);
        if (e_index >= static_cast<long long>(members.size()))
          throw forge::Error(forge::Errc::BadIndex, "index outside the enumerated family")
              .with("index", e_index)
              .with("family_size", static_cast<long long>(members.size()));
        for (std::size_t i = 0; i < members.size(); ++i)
          emit(i, members[i].arcs, members[i].source.perm(), "source_perm");
      }
      return 0;
    }

    if (app.got_subcommand(rotations)) {
      auto labels = forge::canonical_cycle_labeling(r_n);
      auto [r1, r2] = forge::loop_digon_rotations(r_n);
      json out{{"format", 1},
               {"n", r_n},
               {"labels", labels},
               {"r1", forge::digraph_to_json(r1)},
               {"r2", forge::digraph_to_json(r2)}};
      std::cout << out.dump() << "\n";
      return 0;
    }

    if (app.got_subcommand(product)) {
      std::ifstream in(p_base);
      if (!in)
        throw forge::Error(forge::Errc::BadFormat, "cannot open base file: " + p_base);
      json jbase;
      try {
        in >> jbase;
      } catch (const json::exception& e) {
        throw forge::Error(forge::Errc::BadFormat,
                           std::string("base is not valid JSON: ") + e.what());
      }
      auto base = forge::digraph_from_json(jbase);
      auto h = resolve_h_for_digraph(p_h, base, p_n);
      std::cout << digraph_line(forge::oxh_product(h)).dump() << "\n";
      return 0;
    }

    if (app.got_subcommand(expand)) {
      auto values = forge::parse_sequence_line(read_sequence_line(x_in));
      std::string line;
      if (values.size() % 2 == 1) {
        auto s = forge::ExtendedSkolemSeq::validate(values);
        auto base = forge::seq_to_loop_matching(s);
        auto family = forge::enumerate_RSn(x_n);
        auto resolved = forge::resolve_h_spec(x_h, base, x_n, family);
        forge::ExtendedSkolemSeq out = [&] {
          if (resolved.loop_image) {
            if (!x_permissive)
              throw forge::Error(forge::Errc::BadArgument,
                                 "inline loop image requires --permissive");
            return forge::expand_extended(s, x_n, resolved.h, *resolved.loop_image);
          }
          auto choice = static_cast<forge::LoopChoice>(x_loop_choice);
          if (expand->count("--loop-choice") == 0 && resolved.loop_choice)
            choice = *resolved.loop_choice;
          return forge::expand_extended(s, x_n, resolved.h, choice);
        }();
        line = forge::format_sequence(out.values());
        // re-verify the exact bytes that will be printed
        forge::ExtendedSkolemSeq::validate(forge::parse_sequence_line(line));
      } else {
        auto s = forge::LangfordSeq::validate(values, x_defect);
        auto base = forge::seq_to_matching(s);
        auto family = forge::enumerate_RSn(x_n);
        auto resolved = forge::resolve_h_spec(x_h, base, x_n, family);
        auto out = forge::expand_langford(s, x_n, resolved.h);
        line = forge::format_sequence(out.values());
        forge::LangfordSeq::validate(forge::parse_sequence_line(line), out.defect());
      }
      std::cout << line << "\n";
      return 0;
    }

    if (app.got_subcommand(count)) {
      auto guards = guards_from_env();
      forge::CountReport report;
      if (c_bound == "theorem-1-1") {
        report = forge::bound_theorem_1_1(c_m, guards);
      } else {
        if (c_bound == "theorem-3-3")
          report = forge::bound_theorem_3_3(c_m, c_n, c_defect, guards);
        else if (c_bound == "corollary-3-4")
          report = forge::bound_corollary_3_4(c_m, c_n, guards);
        else if (c_bound == "remark")
          report = forge::bound_remark(c_m, c_n, guards);
        else
          report = forge::bound_theorem_4_4(c_m, c_n, c_trivial, guards);
      }
      std::cout << report.to_json().dump() << "\n";
      return 0;
    }

    if (app.got_subcommand(census)) {
      auto guards = guards_from_env();
      if (s_extended) {
        auto res = forge::run_census_extended(s_m, s_n, s_trivial, guards);
        if (s_print)
          for (const auto& s : res.outputs)
            std::cout << forge::format_sequence(s.values()) << "\n";
        std::cout << res.report.to_json().dump() << "\n";
      } else {
        auto res = forge::run_census_langford(s_m, s_n, s_defect, guards);
        if (s_print)
          for (const auto& s : res.outputs)
            std::cout << forge::format_sequence(s.values()) << "\n";
        std::cout << res.report.to_json().dump() << "\n";
      }
      return 0;
    }
  } catch (const forge::Error& e) {
    std::cerr << error_json(e).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"detail", {{"message", e.what()}}}}.dump()
              << "\n";
    return 1;
  }
  return 0;
}
