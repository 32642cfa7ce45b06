#include "metab/witness_io.hpp"

namespace metab {

using nlohmann::json;

namespace {

int field_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) throw WitnessError(std::string("missing integer field '") + key + "'");
  return j.at(key).get<int>();
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw WitnessError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

json poly_to_json(const Poly& f) { return f.str(); }

Poly poly_from_json(const json& j, int nvars) {
  if (!j.is_string()) throw WitnessError("polynomial must be a string");
  return parse_poly(j.get<std::string>(), nvars);
}

json mat_to_json(const Mat& a) { return a.str(); }

Mat mat_from_json(const json& j, int nvars) {
  if (!j.is_string()) throw WitnessError("matrix must be a string");
  return parse_matrix(j.get<std::string>(), nvars);
}

json witness_to_json(const IAmWitness& w, long m, int n) {
  int nv = n;
  json fs = json::array();
  for (const auto& f : w.factors) {
    if (f.kind == WitnessFactor::Kind::PowerM) {
      nv = f.base.nvars();
      fs.push_back({{"kind", "power"}, {"base", mat_to_json(f.base)}});
    } else {
      const auto& p = f.params;
      nv = p.f.nvars();
      fs.push_back({{"kind", "template"},
                    {"family", p.family},
                    {"u", p.u},
                    {"i", p.i},
                    {"j", p.j},
                    {"k", p.k},
                    {"f", poly_to_json(p.f)},
                    {"conj", mat_to_json(f.conj)}});
    }
  }
  return {{"m", m}, {"n", n}, {"nvars", nv}, {"factors", fs}};
}

IAmWitness witness_from_json(const json& j) {
  int nv = field_int(j, "nvars");
  IAmWitness w;
  for (const auto& f : field(j, "factors")) {
    std::string kind = field(f, "kind").get<std::string>();
    WitnessFactor wf;
    if (kind == "power") {
      wf.kind = WitnessFactor::Kind::PowerM;
      wf.base = mat_from_json(field(f, "base"), nv);
    } else if (kind == "template") {
      wf.kind = WitnessFactor::Kind::Template;
      wf.params = {field_int(f, "family"), field_int(f, "u"), field_int(f, "i"), field_int(f, "j"),
                   field_int(f, "k"), poly_from_json(field(f, "f"), nv)};
      wf.conj = mat_from_json(field(f, "conj"), nv);
    } else {
      throw WitnessError("unknown witness factor kind '" + kind + "'");
    }
    w.factors.push_back(std::move(wf));
  }
  return w;
}

json factor_input_to_json(const FactorInput& in) {
  json gens = json::array();
  for (const auto& g : in.generators) {
    json e = {{"f", poly_to_json(g.f)}, {"h", poly_to_json(g.h)}, {"i", g.i}, {"j", g.j}};
    if (g.h_witness) {
      json a = json::array(), b = json::array();
      for (const auto& p : g.h_witness->a) a.push_back(poly_to_json(p));
      for (const auto& p : g.h_witness->b) b.push_back(poly_to_json(p));
      e["tm"] = {{"a", a}, {"b", b}, {"c", poly_to_json(g.h_witness->c)}};
    }
    gens.push_back(e);
  }
  return {{"n", in.n}, {"m", in.m}, {"nvars", in.matrix.nvars()}, {"matrix", mat_to_json(in.matrix)},
          {"generators", gens}};
}

FactorInput factor_input_from_json(const json& j) {
  FactorInput in;
  in.n = field_int(j, "n");
  in.m = field_int(j, "m");
  int nv = j.contains("nvars") ? field_int(j, "nvars") : in.n;
  in.matrix = mat_from_json(field(j, "matrix"), nv);
  for (const auto& e : field(j, "generators")) {
    SuslinGenerator g;
    g.f = poly_from_json(field(e, "f"), nv);
    g.h = poly_from_json(field(e, "h"), nv);
    g.i = field_int(e, "i");
    g.j = field_int(e, "j");
    g.d = in.matrix.dim();
    if (e.contains("tm")) {
      const json& t = e.at("tm");
      TmWitness w;
      w.n = in.n;
      w.m = in.m;
      for (const auto& p : field(t, "a")) w.a.push_back(poly_from_json(p, nv));
      for (const auto& p : field(t, "b")) w.b.push_back(poly_from_json(p, nv));
      w.c = poly_from_json(field(t, "c"), nv);
      if (static_cast<int>(w.a.size()) != in.n || static_cast<int>(w.b.size()) != in.n)
        throw WitnessError("T_m witness needs n entries in a and b");
      g.h_witness = std::move(w);
    }
    in.generators.push_back(std::move(g));
  }
  return in;
}

json decomposition_to_json(const Decomposition& d) {
  json fs = json::array();
  for (const auto& f : d.factors) {
    json e = {{"form", f.form}, {"role", f.role_name()}, {"conj", mat_to_json(f.conj)},
              {"i", f.i},       {"j", f.j},              {"h", poly_to_json(f.h)}};
    if (f.r) e["r"] = f.r;
    if (f.form >= 3) e["f"] = poly_to_json(f.f);
    fs.push_back(e);
  }
  return {{"factors", fs}, {"residual_identity", d.residual.is_identity()}};
}

}  // namespace metab
