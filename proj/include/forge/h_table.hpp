#pragma once

#include <charconv>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "forge/construct.hpp"
#include "forge/digraphs.hpp"
#include "forge/errors.hpp"
#include "forge/sem.hpp"

// Arc-image specifications for the expansion commands. The canonical index
// of a family member is its 0-based position in enumerate_RSn(n).
//
// Spec grammar:
//   constant:INDEX  every proper arc maps to RSn[INDEX]
//   random:SEED     one mt19937_64 stream seeded with SEED; each proper arc
//                   in lexicographic order draws next() % |RSn|; if the base
//                   matching has a loop, a final draw 1 + next() % 2 picks
//                   the loop rotation
//   table:FILE      JSON object: key "u,v" maps that arc to either
//                   {"n": N, "index": I} or an inline digraph
//                   {"order": N, "arcs": [...]}; key "L" maps the loop to
//                   {"choice": 1|2} or (permissive mode) an inline digraph

namespace forge {

struct ResolvedAssignment {
  ArcAssignment h;  // over the proper arcs of the base matching
  std::optional<LoopChoice> loop_choice;
  std::optional<Digraph> loop_image;  // inline loop digraph, permissive only
};

inline ResolvedAssignment parse_h_table(const nlohmann::json& table,
                                        const LabeledMatching& base, int n,
                                        const std::vector<RotationMember>& family) {
  if (!table.is_object())
    throw Error(Errc::BadFormat, "h table must be a JSON object");

  auto resolve_entry = [&](const nlohmann::json& e) -> Digraph {
    if (e.is_object() && e.contains("index")) {
      if (!e.contains("n") || !e["n"].is_number_integer() || !e["index"].is_number_integer())
        throw Error(Errc::BadFormat, "indexed entry must be {\"n\": N, \"index\": I}");
      if (e["n"].get<int>() != n)
        throw Error(Errc::OrderMismatch, "entry family order differs from n")
            .with("entry_n", e["n"].get<int>())
            .with("n", n);
      long long idx = e["index"].get<long long>();
      if (idx < 0 || idx >= static_cast<long long>(family.size()))
        throw Error(Errc::BadIndex, "index outside the enumerated family")
            .with("index", idx)
            .with("family_size", static_cast<long long>(family.size()));
      return family[static_cast<std::size_t>(idx)].arcs;
    }
    Digraph g = digraph_from_json(e);
    if (g.order() != n)
      throw Error(Errc::OrderMismatch, "inline digraph order differs from n")
          .with("order", g.order())
          .with("n", n);
    return g;
  };

  ResolvedAssignment out{ArcAssignment(base.arcs_digraph(), n), std::nullopt, std::nullopt};
  for (const auto& [key, entry] : table.items()) {
    if (key == "L") {
      if (!base.has_loop())
        throw Error(Errc::BadIndex, "\"L\" given but the base matching has no loop");
      if (entry.is_object() && entry.contains("choice")) {
        int c = entry["choice"].is_number_integer() ? entry["choice"].get<int>() : 0;
        if (c != 1 && c != 2)
          throw Error(Errc::BadIndex, "loop choice must be 1 or 2").with("choice", c);
        out.loop_choice = static_cast<LoopChoice>(c);
      } else {
        out.loop_image = resolve_entry(entry);
      }
      continue;
    }
    int u = 0, v = 0;
    const char* p = key.data();
    const char* end = key.data() + key.size();
    auto r1 = std::from_chars(p, end, u);
    if (r1.ec != std::errc() || r1.ptr == end || *r1.ptr != ',')
      throw Error(Errc::BadFormat, "arc key must look like \"u,v\"");
    auto r2 = std::from_chars(r1.ptr + 1, end, v);
    if (r2.ec != std::errc() || r2.ptr != end)
      throw Error(Errc::BadFormat, "arc key must look like \"u,v\"");
    bool known = false;
    for (auto [a, b] : base.arcs()) known |= (a == u && b == v);
    if (!known)
      throw Error(Errc::BadArgument, "key does not name an arc of the base matching")
          .with("u", u)
          .with("v", v);
    out.h.assign({u, v}, resolve_entry(entry));
  }

  for (auto [u, v] : base.arcs())
    if (!out.h.has_image({u, v}))
      throw Error(Errc::MissingArc, "table leaves a base arc without an image")
          .with("u", u)
          .with("v", v);
  return out;
}

inline ResolvedAssignment resolve_h_spec(const std::string& spec,
                                         const LabeledMatching& base, int n,
                                         const std::vector<RotationMember>& family) {
  auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (kind == "constant") {
    long long idx = -1;
    auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), idx);
    if (ec != std::errc() || p != arg.data() + arg.size())
      throw Error(Errc::BadFormat, "constant spec needs an integer index");
    if (idx < 0 || idx >= static_cast<long long>(family.size()))
      throw Error(Errc::BadIndex, "index outside the enumerated family")
          .with("index", idx)
          .with("family_size", static_cast<long long>(family.size()));
    ResolvedAssignment out{ArcAssignment(base.arcs_digraph(), n), std::nullopt, std::nullopt};
    for (auto arc : base.arcs()) out.h.assign(arc, family[idx].arcs);
    return out;
  }

  if (kind == "random") {
    unsigned long long seed = 0;
    auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), seed);
    if (ec != std::errc() || p != arg.data() + arg.size())
      throw Error(Errc::BadFormat, "random spec needs an unsigned integer seed");
    if (family.empty())
      throw Error(Errc::BadIndex, "family is empty, nothing to draw from");
    std::mt19937_64 rng(seed);
    ResolvedAssignment out{ArcAssignment(base.arcs_digraph(), n), std::nullopt, std::nullopt};
    for (auto arc : base.arcs())
      out.h.assign(arc, family[rng() % family.size()].arcs);
    if (base.has_loop())
      out.loop_choice = static_cast<LoopChoice>(1 + static_cast<int>(rng() % 2));
    return out;
  }

  if (kind == "table") {
    std::ifstream in(arg);
    if (!in) throw Error(Errc::BadFormat, "cannot open h table file: " + arg);
    nlohmann::json table;
    try {
      in >> table;
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::BadFormat, std::string("h table is not valid JSON: ") + e.what());
    }
    return parse_h_table(table, base, n, family);
  }

  throw Error(Errc::BadFormat, "h spec must be constant:INDEX, random:SEED or table:FILE");
}

}  // namespace forge
