#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vassgames/applications.hpp"
#include "vassgames/energy.hpp"
#include "vassgames/io.hpp"
#include "vassgames/oracle.hpp"
#include "vassgames/vass_solver.hpp"

namespace py = pybind11;
using namespace vassgames;

namespace {

Completion completion_of(const std::string& name) {
    if (name == "none") return Completion::None;
    if (name == "sinks") return Completion::AddSinks;
    if (name == "stuck") return Completion::AllowStuck;
    throw GameError("completion must be none, sinks or stuck");
}

SolverOptions options(std::size_t node_budget, std::uint64_t strategy_budget) {
    SolverOptions o;
    o.node_budget = node_budget;
    o.strategy_budget = strategy_budget;
    return o;
}

CounterSet counter_set(const IntegerGame& g, const std::optional<std::vector<std::string>>& names) {
    if (!names) return all_counters(g.num_counters());
    CounterSet set = 0;
    for (const auto& n : *names) {
        const auto c = g.find_counter(n);
        if (!c) throw GameError("unknown counter " + n);
        set = with(set, *c);
    }
    return set;
}

StateId state_of(const IntegerGame& g, const std::string& name) {
    const auto q = g.find_state(name);
    if (!q) throw GameError("unknown state " + name);
    return *q;
}

std::vector<Value> valuation(const IntegerGame& g, const std::map<std::string, Value>& values) {
    std::vector<Value> v(g.num_counters(), 0);
    std::vector<bool> seen(g.num_counters(), false);
    for (const auto& [name, x] : values) {
        const auto c = g.find_counter(name);
        if (!c) throw GameError("unknown counter " + name);
        if (x < 0) throw GameError("counter values are natural numbers");
        v[*c] = x;
        seen[*c] = true;
    }
    for (CounterId c = 0; c < g.num_counters(); ++c)
        if (!seen[c]) throw GameError("missing value for counter " + g.counters()[c]);
    return v;
}

using PyFrontier = std::map<std::string, std::vector<std::map<std::string, Value>>>;

PyFrontier to_py(const IntegerGame& g, const Frontier& f) {
    PyFrontier out;
    for (StateId q = 0; q < g.num_states(); ++q) {
        auto& list = out[g.state(q).name];
        for (const auto& e : f[q].elements()) {
            std::map<std::string, Value> m;
            for (CounterId c = 0; c < g.num_counters(); ++c)
                if (e.defined(c)) m[g.counters()[c]] = e.values[c];
            list.push_back(std::move(m));
        }
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Solvers for single-sided VASS parity games";

    static py::exception<BudgetExceeded> budget(m, "BudgetExceeded");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const BudgetExceeded& e) {
            py::set_error(budget, e.what());
        } catch (const GameError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<IntegerGame>(m, "Game")
        .def_property_readonly("counters", &IntegerGame::counters)
        .def_property_readonly("states",
                               [](const IntegerGame& g) {
                                   std::vector<std::string> names;
                                   for (const auto& s : g.states()) names.push_back(s.name);
                                   return names;
                               })
        .def_property_readonly("num_transitions", &IntegerGame::num_transitions)
        .def_property_readonly("single_sided", [](const IntegerGame& g) { return is_single_sided(g); })
        .def_property_readonly("deadlock_free", &IntegerGame::vass_deadlock_free)
        .def("__str__", [](const IntegerGame& g) { return print_game(g); })
        .def("__eq__", [](const IntegerGame& a, const IntegerGame& b) { return a == b; });

    py::class_<FiniteLTS>(m, "LTS")
        .def_readonly("states", &FiniteLTS::states)
        .def("__str__", [](const FiniteLTS& l) { return print_lts(l); });

    m.def("parse_game", [](const std::string& text, const std::string& completion) {
        return parse_game(text, completion_of(completion));
    }, py::arg("text"), py::arg("completion") = "none");
    m.def("parse_lts", &parse_lts, py::arg("text"));

    m.def("solve_abstract", [](const IntegerGame& g, std::size_t node_budget, std::uint64_t strategy_budget) {
        const AbstractVerdict v = solve_abstract_energy_parity(g, options(node_budget, strategy_budget));
        std::map<std::string, int> out;
        for (StateId q = 0; q < g.num_states(); ++q) out[g.state(q).name] = v[q] == Player::P0 ? 0 : 1;
        return out;
    }, py::arg("game"), py::arg("node_budget") = 100'000, py::arg("strategy_budget") = 200'000);

    m.def("pareto", [](const IntegerGame& g, const std::optional<std::vector<std::string>>& counters,
                       std::size_t node_budget, std::uint64_t strategy_budget) {
        if (!g.vass_deadlock_free()) throw GameError("some state can deadlock; parse with completion='sinks'");
        return to_py(g, pareto_single_sided_vass(g, counter_set(g, counters), options(node_budget, strategy_budget)));
    }, py::arg("game"), py::arg("counters") = py::none(), py::arg("node_budget") = 100'000,
          py::arg("strategy_budget") = 200'000);

    m.def("pareto_energy", [](const IntegerGame& g, const std::optional<std::vector<std::string>>& counters,
                              std::size_t node_budget, std::uint64_t strategy_budget) {
        return to_py(g, pareto_energy(g, counter_set(g, counters), options(node_budget, strategy_budget)));
    }, py::arg("game"), py::arg("counters") = py::none(), py::arg("node_budget") = 100'000,
          py::arg("strategy_budget") = 200'000);

    m.def("check", [](const IntegerGame& g, const std::string& config) {
        if (!g.vass_deadlock_free()) throw GameError("some state can deadlock; parse with completion='sinks'");
        ParetoSolver solver(g);
        return solver.c_version(parse_config(g, config));
    }, py::arg("game"), py::arg("config"), "Does Player 0 win from some instantiation of the configuration?");

    m.def("oracle", [](const IntegerGame& g, const std::string& config, const std::string& semantics,
                       Value max_cap) {
        if (semantics != "vass" && semantics != "energy") throw GameError("semantics must be vass or energy");
        const Semantics sem = semantics == "vass" ? Semantics::Vass : Semantics::Energy;
        const PartialConfig c = parse_config(g, config);
        if (c.dom != all_counters(g.num_counters())) throw GameError("the oracle needs every counter");
        return std::string(to_string(bracket_decide(g, sem, c, max_cap)));
    }, py::arg("game"), py::arg("config"), py::arg("semantics") = "vass", py::arg("max_cap") = 64);

    m.def("weaksim", [](const FiniteLTS& fs, const std::string& s0, const IntegerGame& vass, const std::string& q0,
                        const std::map<std::string, Value>& values) {
        const auto s = fs.find_state(s0);
        if (!s) throw GameError("unknown LTS state " + s0);
        return check_weaksim(fs, *s, vass, state_of(vass, q0), valuation(vass, values));
    }, py::arg("lts"), py::arg("s0"), py::arg("vass"), py::arg("q0"), py::arg("valuation"));

    m.def("model_check", [](const IntegerGame& vass, const std::string& formula, const std::string& q,
                            const std::map<std::string, Value>& values) {
        return model_check(vass, *parse_formula(formula), state_of(vass, q), valuation(vass, values));
    }, py::arg("vass"), py::arg("formula"), py::arg("state"), py::arg("valuation"));

    m.def("global_model_check", [](const IntegerGame& vass, const std::string& formula) {
        return to_py(vass, global_model_check(vass, *parse_formula(formula)));
    }, py::arg("vass"), py::arg("formula"));

    m.def("format_formula", [](const std::string& text) { return format_formula(*parse_formula(text)); });
}
