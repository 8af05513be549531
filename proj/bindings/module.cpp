#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "revy/parser.hpp"
#include "revy/preorders.hpp"
#include "revy/printer.hpp"
#include "revy/testing.hpp"
#include "revy/verify.hpp"

namespace py = pybind11;
using namespace revy;

namespace {

// A configuration string contains "|-"; a bare term is an initial system.
Configuration parse_cfg(const std::string& text) {
  if (text.find("|-") != std::string::npos) return parse_configuration(text);
  return Configuration{DepHistory{}, parse_system(text)};
}

ObsTrace parse_obs(const std::string& text) {
  ObsTrace out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ') tok.pop_back();
    if (tok.empty() || tok == "eps") continue;
    if (tok.front() == '\'')
      out.push_back(visible(tok.substr(1), true));
    else
      out.push_back(visible(tok));
  }
  return out;
}

std::set<ObsTrace> parse_obs_set(const std::vector<std::string>& items) {
  std::set<ObsTrace> out;
  for (const auto& s : items) out.insert(parse_obs(s));
  return out;
}

py::dict trace_set_dict(const TraceSet& ts) {
  py::list traces;
  for (const ObsTrace& t : ts.traces) traces.append(print_obs_trace(t));
  py::dict d;
  d["depth"] = ts.depth;
  d["complete"] = ts.complete;
  d["traces"] = traces;
  return d;
}

py::dict verdict_dict(const SafetyVerdict& v) {
  py::dict d;
  d["status"] = verdict_status_name(v.status);
  if (v.witness) d["witness"] = print_obs_trace(*v.witness);
  return d;
}

py::dict refusal_dict(const Refusal& r) {
  py::list vs, ws;
  for (const ObsTrace& t : r.V) vs.append(print_obs_trace(t));
  for (const ObsTrace& t : r.W) ws.append(print_obs_trace(t));
  py::dict d;
  d["t"] = print_obs_trace(r.t);
  d["V"] = vs;
  d["W"] = ws;
  return d;
}

py::dict test_dict(const TestVerdict& v) {
  py::dict d;
  d["status"] = test_status_name(v.status);
  d["states"] = v.states;
  d["truncated"] = v.truncated;
  if (!v.witness_state.empty()) {
    d["witness_state"] = v.witness_state;
    d["witness_run"] = v.witness_run;
  }
  return d;
}

py::dict graph_dict(const StateGraph& g) {
  py::list states, fwd, bwd;
  for (std::size_t i = 0; i < g.size(); ++i) states.append(g.reprs[i]);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (const auto& e : g.forward[i])
      fwd.append(py::make_tuple(i, print_label(e.label), e.to));
    for (const auto& e : g.backward[i])
      bwd.append(py::make_tuple(i, "roll " + print_key(e.key), e.to));
  }
  py::dict d;
  d["root"] = g.root;
  d["truncated"] = g.truncated;
  d["states"] = states;
  d["forward_edges"] = fwd;
  d["backward_edges"] = bwd;
  return d;
}

}  // namespace

PYBIND11_MODULE(_revy, m) {
  m.doc() = "reversible CCS workbench: terms, rollback, preorders, testing";

  m.def("fmt", [](const std::string& text) {
    return print_system(parse_system(text));
  });
  m.def("fmt_process", [](const std::string& text) {
    return print_process(parse_process(text));
  });
  m.def("fmt_configuration", [](const std::string& text) {
    return print_configuration(parse_configuration(text));
  });
  m.def("canonical", [](const std::string& text) {
    return canonical_repr(parse_cfg(text).system);
  });
  m.def("structurally_equal", [](const std::string& a, const std::string& b) {
    return structurally_equal(parse_cfg(a).system, parse_cfg(b).system);
  });
  m.def("limited_eq", [](const std::string& a, const std::string& b) {
    return limited_eq(parse_cfg(a).system, parse_cfg(b).system);
  });
  m.def("well_formed", [](const std::string& cfg) {
    return well_formed(parse_cfg(cfg));
  });

  m.def(
      "forward_steps",
      [](const std::string& cfg) {
        py::list out;
        for (const ForwardStep& s : forward_steps(parse_cfg(cfg))) {
          py::dict d;
          d["key"] = s.key;
          d["kind"] = redex_kind_name(s.kind);
          if (!s.channel.empty()) d["channel"] = s.channel;
          d["participants"] = s.participants;
          d["successor"] = print_configuration(s.successor);
          out.append(d);
        }
        return out;
      },
      py::arg("config"));

  m.def(
      "backward_steps",
      [](const std::string& cfg) {
        py::list out;
        for (const BackwardStep& s : backward_steps(parse_cfg(cfg))) {
          py::dict d;
          d["target_key"] = s.target_key;
          d["undone_keys"] = s.undone_keys;
          d["successor"] = print_configuration(s.successor);
          out.append(d);
        }
        return out;
      },
      py::arg("config"));

  m.def(
      "lts",
      [](const std::string& term, int depth, bool backward, std::size_t cap) {
        GraphOptions opt;
        opt.depth = depth;
        opt.include_backward = backward;
        opt.state_cap = cap;
        return graph_dict(build_graph(parse_cfg(term), opt));
      },
      py::arg("term"), py::arg("depth") = 6, py::arg("backward") = false,
      py::arg("state_cap") = 200000);

  m.def(
      "dot",
      [](const std::string& term, int depth, bool backward) {
        GraphOptions opt;
        opt.depth = depth;
        opt.include_backward = backward;
        return dot_export(build_graph(parse_cfg(term), opt));
      },
      py::arg("term"), py::arg("depth") = 6, py::arg("backward") = false);

  m.def(
      "trace_set",
      [](const std::string& term, int depth) {
        return trace_set_dict(trace_set(parse_cfg(term), depth));
      },
      py::arg("term"), py::arg("depth") = 6);

  m.def(
      "roll_set",
      [](const std::string& cfg, int depth) {
        return trace_set_dict(roll_set(parse_cfg(cfg), depth));
      },
      py::arg("config"), py::arg("depth") = 6);

  m.def(
      "safety_leq",
      [](const std::string& m_, const std::string& n_, int depth) {
        return verdict_dict(safety_leq(parse_system(m_), parse_system(n_), depth));
      },
      py::arg("m"), py::arg("n"), py::arg("depth") = 6);

  m.def(
      "refusal_member",
      [](const std::string& m_, const std::string& t,
         const std::vector<std::string>& v, const std::vector<std::string>& w,
         int depth) {
        Refusal r{parse_obs(t), parse_obs_set(v), parse_obs_set(w)};
        MemberResult res = refusal_member(parse_system(m_), r, depth);
        py::dict d;
        d["member"] = res.value;
        d["conclusive"] = res.conclusive;
        return d;
      },
      py::arg("m"), py::arg("t"), py::arg("V"), py::arg("W"),
      py::arg("depth") = 6);

  m.def(
      "liveness_leq_refusal",
      [](const std::string& m_, const std::string& n_, int depth,
         std::size_t budget) {
        LivenessVerdict v = liveness_leq_refusal(parse_system(m_),
                                                 parse_system(n_), depth, budget);
        py::dict d;
        d["status"] = verdict_status_name(v.status);
        d["membership_tests"] = v.membership_tests;
        if (v.witness) d["witness"] = refusal_dict(*v.witness);
        return d;
      },
      py::arg("m"), py::arg("n"), py::arg("depth") = 6,
      py::arg("budget") = 100000);

  m.def(
      "earliest_state",
      [](const std::string& cfg) {
        return print_configuration(earliest_state(parse_cfg(cfg)));
      },
      py::arg("config"));

  m.def(
      "may_pass",
      [](const std::string& m_, const std::string& test, int depth) {
        return test_dict(may_pass(parse_system(m_), parse_process(test), depth));
      },
      py::arg("m"), py::arg("test"), py::arg("depth") = 6);

  m.def(
      "shd_pass",
      [](const std::string& m_, const std::string& test, int depth) {
        return test_dict(shd_pass(parse_system(m_), parse_process(test), depth));
      },
      py::arg("m"), py::arg("test"), py::arg("depth") = 6);

  m.def(
      "gen_safety_test",
      [](const std::string& t) {
        return print_process(gen_safety_test(parse_obs(t)));
      },
      py::arg("t"));

  m.def(
      "gen_liveness_test",
      [](const std::string& t, const std::vector<std::string>& v,
         const std::vector<std::string>& w) {
        Refusal r{parse_obs(t), parse_obs_set(v), parse_obs_set(w)};
        return print_process(gen_liveness_test(r));
      },
      py::arg("t"), py::arg("V"), py::arg("W"));

  m.def(
      "verify",
      [](const std::string& suite, int n, unsigned seed) {
        SuiteReport rep;
        if (suite == "lemmas")
          rep = verify_lemmas(n, seed);
        else if (suite == "zip")
          rep = verify_zip(n, seed);
        else if (suite == "props")
          rep = verify_props(n, seed);
        else
          throw std::invalid_argument("unknown suite: " + suite);
        py::list props;
        for (const auto& p : rep.properties) {
          py::dict d;
          d["name"] = p.name;
          d["checked"] = p.checked;
          d["violations"] = p.violations;
          props.append(d);
        }
        py::dict d;
        d["suite"] = rep.suite;
        d["ok"] = rep.ok();
        d["properties"] = props;
        return d;
      },
      py::arg("suite"), py::arg("n") = 100, py::arg("seed") = 42);
}
