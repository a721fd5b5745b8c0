#include "strudiag/placement.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "graph_engine.hpp"

namespace strudiag {

using detail::Graph;
using detail::MatchingEngine;
using detail::NameIndex;

const char* to_string(PlacementObjective o) {
    switch (o) {
        case PlacementObjective::FullDetectability: return "full-detectability";
        case PlacementObjective::FullIsolability: return "full-isolability";
    }
    return "?";
}

int SensorSet::pack_current_count() const { return count_of(SensorKind::PackCurrent); }

int SensorSet::count_of(SensorKind kind) const {
    return static_cast<int>(std::count_if(sensors.begin(), sensors.end(),
                                          [&](const SensorLocation& s) { return s.kind == kind; }));
}

std::vector<std::string> SensorSet::tokens() const {
    std::vector<std::string> out;
    for (const SensorLocation& s : sensors) out.push_back(s.token());
    return out;
}

namespace {

using RowKey = std::vector<std::uint64_t>;

struct RowKeyHash {
    std::size_t operator()(const RowKey& v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint64_t w : v) {
            h ^= static_cast<std::size_t>(w);
            h *= 1099511628211ull;
        }
        return h;
    }
};

RowKey make_key(const std::vector<int>& bits, int universe) {
    RowKey key((static_cast<std::size_t>(universe) + 63) / 64, 0);
    for (int b : bits) key[static_cast<std::size_t>(b) / 64] |= 1ull << (static_cast<std::size_t>(b) % 64);
    return key;
}

/// Loop-free test for a redundancy-1 PSO row set: some residual choice
/// leaves a perfectly matched slice whose solve-dependency graph is
/// acyclic.
bool rowset_loop_free(const Graph& g, const std::vector<int>& rows) {
    std::vector<int> cols;
    {
        std::unordered_set<int> seen;
        for (int r : rows)
            for (int c : g.row_vars[static_cast<std::size_t>(r)])
                if (seen.insert(c).second) cols.push_back(c);
    }
    const std::size_t need = rows.size() - 1;
    if (cols.size() != need) return rows.size() == 1 && cols.empty();

    std::vector<int> col_match(static_cast<std::size_t>(g.n_cols), -1);
    std::vector<int> visited(static_cast<std::size_t>(g.n_rows), 0);
    int stamp = 0;

    for (int residual : rows) {
        for (int c : cols) col_match[static_cast<std::size_t>(c)] = -1;
        auto try_row = [&](auto&& self, int row) -> bool {
            for (int c : g.row_vars[static_cast<std::size_t>(row)]) {
                int owner = col_match[static_cast<std::size_t>(c)];
                if (owner == -1) {
                    col_match[static_cast<std::size_t>(c)] = row;
                    return true;
                }
                if (visited[static_cast<std::size_t>(owner)] == stamp) continue;
                visited[static_cast<std::size_t>(owner)] = stamp;
                if (self(self, owner)) {
                    col_match[static_cast<std::size_t>(c)] = row;
                    return true;
                }
            }
            return false;
        };
        bool complete = true;
        for (int r : rows) {
            if (r == residual) continue;
            ++stamp;
            visited[static_cast<std::size_t>(r)] = stamp;
            if (!try_row(try_row, r)) {
                complete = false;
                break;
            }
        }
        if (!complete) continue;

        // Kahn over the solve dependencies; acyclic iff every equation is
        // consumed.
        std::unordered_map<int, int> owner_of;  // col -> solving row
        std::unordered_map<int, int> own_col;   // row -> solved col
        for (int c : cols) {
            int r = col_match[static_cast<std::size_t>(c)];
            owner_of[c] = r;
            own_col[r] = c;
        }
        std::unordered_map<int, int> dep_count;
        std::unordered_map<int, std::vector<int>> dependents;
        for (int r : rows) {
            if (r == residual) continue;
            int own = own_col.at(r);
            int deps = 0;
            for (int c : g.row_vars[static_cast<std::size_t>(r)]) {
                if (c == own) continue;
                auto it = owner_of.find(c);
                if (it == owner_of.end()) continue;
                ++deps;
                dependents[it->second].push_back(r);
            }
            dep_count[r] = deps;
        }
        std::vector<int> ready;
        for (const auto& [r, d] : dep_count)
            if (d == 0) ready.push_back(r);
        std::size_t consumed = 0;
        for (std::size_t qi = 0; qi < ready.size(); ++qi) {
            int r = ready[qi];
            ++consumed;
            auto it = dependents.find(r);
            if (it == dependents.end()) continue;
            for (int nxt : it->second)
                if (--dep_count[nxt] == 0) ready.push_back(nxt);
        }
        if (consumed == need) return true;
    }
    return false;
}

/// One compiled model of the family (one per ESC location for robust SP):
/// the bare pack rows plus one pre-built row per sensor slot, toggled by
/// the searches.
struct ModelCtx {
    Graph graph;
    NameIndex names;
    int n_base_rows = 0;
    std::vector<int> slot_row;                      // slot -> graph row
    std::vector<std::vector<int>> base_fault_rows;  // base fault -> rows
    std::vector<std::string> base_faults;
    std::unique_ptr<MatchingEngine> union_eng;   // chosen + undecided tail
    std::unique_ptr<MatchingEngine> chosen_eng;  // chosen only
    std::unique_ptr<MatchingEngine> set_eng;     // loop-free filter, set level
    std::unique_ptr<MatchingEngine> walk_eng;    // loop-free filter, PSO walk

    // Loop-free caches, valid for this graph across all candidate sets.
    std::unordered_map<RowKey, bool, RowKeyHash> mso_loop_free;
    std::unordered_set<RowKey, RowKeyHash> walk_failed;  // key(rows) ++ must
    struct Witness {
        std::vector<int> rows;  // sorted
        RowKey slot_bits;       // slots whose sensor row the MSO uses
    };
    std::unordered_map<int, std::vector<Witness>> witnesses;  // fault row -> MSOs
};

class PlacementEngine {
public:
    PlacementEngine(const std::vector<StructuralModel>& family,
                    const std::vector<SensorLocation>& candidates, const PlacementGoal& goal)
        : goal_(goal) {
        bool has_pack = std::any_of(candidates.begin(), candidates.end(), [](const SensorLocation& c) {
            return c.kind == SensorKind::PackCurrent;
        });
        if (has_pack) {
            slots_.push_back({SensorKind::PackCurrent});
            slots_.push_back({SensorKind::PackCurrent});
            pack2_slot_ = 1;
        }
        for (const SensorLocation& c : candidates) {
            if (c.kind == SensorKind::PackCurrent) continue;
            if (std::find(slots_.begin(), slots_.end(), c) == slots_.end()) slots_.push_back(c);
        }
        if (slots_.empty()) throw std::invalid_argument("sensor placement needs candidates");
        for (const StructuralModel& m : family) ctxs_.push_back(build_ctx(m));
    }

    std::size_t slot_count() const { return slots_.size(); }

    bool full_set_feasible() {
        std::vector<int> all(slots_.size());
        for (std::size_t i = 0; i < slots_.size(); ++i) all[i] = static_cast<int>(i);
        return achieves(all);
    }

    bool achieves(const std::vector<int>& set_slots) {
        for (auto& ctx : ctxs_)
            for (int s : set_slots) ctx->chosen_eng->activate_row(ctx->slot_row[static_cast<std::size_t>(s)]);
        bool ok = true;
        for (auto& ctx : ctxs_) {
            if (!goal_check(*ctx, *ctx->chosen_eng, set_slots)) {
                ok = false;
                break;
            }
        }
        for (auto& ctx : ctxs_)
            for (int s : set_slots) ctx->chosen_eng->deactivate_row(ctx->slot_row[static_cast<std::size_t>(s)]);
        return ok;
    }

    std::vector<std::vector<int>> enumerate_exact(int k) {
        results_.clear();
        budget_ = k;
        chosen_.clear();
        enumerate(0);
        return results_;
    }

    int find_min_cardinality() {
        if (!full_set_feasible()) return -1;
        for (int k = 0; k <= static_cast<int>(slots_.size()); ++k)
            if (!enumerate_exact(k).empty()) return k;
        return -1;
    }

    bool loop_free_family(const std::vector<int>& set_slots) {
        for (auto& ctx : ctxs_)
            if (!loop_free_family_one(*ctx, set_slots)) return false;
        return true;
    }

    SensorSet to_sensor_set(const std::vector<int>& set_slots) const {
        SensorSet out;
        for (int s : set_slots) out.sensors.push_back(slots_[static_cast<std::size_t>(s)]);
        std::sort(out.sensors.begin(), out.sensors.end());
        return out;
    }

private:
    std::unique_ptr<ModelCtx> build_ctx(const StructuralModel& model) const {
        auto ctx = std::make_unique<ModelCtx>();
        ctx->graph = compile(model, ctx->names);
        ctx->n_base_rows = ctx->graph.n_rows;
        for (const SensorLocation& loc : slots_) {
            auto it = ctx->names.col_of.find(loc.target_name());
            if (it == ctx->names.col_of.end())
                throw std::invalid_argument("sensor candidate target " + loc.target_name() +
                                            " is not an unknown of the model");
            ctx->slot_row.push_back(ctx->graph.add_row({it->second}));
        }
        for (const std::string& f : model.fault_names()) {
            std::vector<int> rows;
            for (const std::string& id : model.equations_of_fault(f))
                rows.push_back(ctx->names.row_of.at(id));
            ctx->base_faults.push_back(f);
            ctx->base_fault_rows.push_back(std::move(rows));
        }
        ctx->union_eng = std::make_unique<MatchingEngine>(ctx->graph);
        ctx->union_eng->solve();
        ctx->chosen_eng = std::make_unique<MatchingEngine>(ctx->graph);
        for (int s : ctx->slot_row) ctx->chosen_eng->set_row_active(s, false);
        ctx->chosen_eng->solve();
        ctx->set_eng = std::make_unique<MatchingEngine>(ctx->graph);
        ctx->walk_eng = std::make_unique<MatchingEngine>(ctx->graph);
        return ctx;
    }

    // ---- goal checks ------------------------------------------------------

    void scope_rows(ModelCtx& ctx, const std::vector<int>& set_slots,
                    std::vector<const std::vector<int>*>& out,
                    std::vector<std::vector<int>>& storage) const {
        out.clear();
        storage.clear();
        storage.reserve(set_slots.size());
        for (const auto& rows : ctx.base_fault_rows) out.push_back(&rows);
        for (int s : set_slots) {
            storage.push_back({ctx.slot_row[static_cast<std::size_t>(s)]});
            out.push_back(&storage.back());
        }
    }

    bool goal_check(ModelCtx& ctx, MatchingEngine& eng, const std::vector<int>& set_slots) {
        std::vector<const std::vector<int>*> faults;
        std::vector<std::vector<int>> storage;
        scope_rows(ctx, set_slots, faults, storage);
        return check_on(eng, faults, goal_.objective == PlacementObjective::FullIsolability);
    }

    bool check_on(MatchingEngine& eng, const std::vector<const std::vector<int>*>& faults,
                  bool isolability) {
        eng.over_determined(over_rows_, over_cols_);
        for (const auto* rows : faults) {
            bool det = false;
            for (int r : *rows)
                if (over_rows_[static_cast<std::size_t>(r)]) {
                    det = true;
                    break;
                }
            if (!det) return false;
        }
        if (!isolability) return true;
        for (const auto* rows_j : faults) {
            for (int r : *rows_j) eng.deactivate_row(r);
            eng.over_determined(over_rows_, over_cols_);
            bool ok = true;
            for (const auto* rows_i : faults) {
                if (rows_i == rows_j) continue;
                bool iso = false;
                for (int r : *rows_i)
                    if (over_rows_[static_cast<std::size_t>(r)]) {
                        iso = true;
                        break;
                    }
                if (!iso) {
                    ok = false;
                    break;
                }
            }
            for (int r : *rows_j) eng.activate_row(r);
            if (!ok) return false;
        }
        return true;
    }

    // ---- enumeration --------------------------------------------------------

    bool bound_ok() {
        // Monotone necessary condition over chosen + undecided tail: the
        // base faults and the already-chosen sensors' faults must satisfy
        // the objective even with every remaining candidate installed.
        for (auto& ctx : ctxs_) {
            std::vector<const std::vector<int>*> faults;
            std::vector<std::vector<int>> storage;
            scope_rows(*ctx, chosen_, faults, storage);
            if (!check_on(*ctx->union_eng, faults,
                          goal_.objective == PlacementObjective::FullIsolability))
                return false;
        }
        return true;
    }

    void enumerate(std::size_t idx) {
        if (static_cast<int>(chosen_.size()) == budget_) {
            bool ok = true;
            for (auto& ctx : ctxs_) {
                if (!goal_check(*ctx, *ctx->chosen_eng, chosen_)) {
                    ok = false;
                    break;
                }
            }
            if (ok) results_.push_back(chosen_);
            return;
        }
        if (idx == slots_.size()) return;
        if (static_cast<int>(chosen_.size() + (slots_.size() - idx)) < budget_) return;

        const bool can_take = pack2_slot_ < 0 || static_cast<int>(idx) != pack2_slot_ ||
                              (!chosen_.empty() && chosen_.front() == 0);
        if (can_take) {
            for (auto& ctx : ctxs_) ctx->chosen_eng->activate_row(ctx->slot_row[idx]);
            chosen_.push_back(static_cast<int>(idx));
            enumerate(idx + 1);
            chosen_.pop_back();
            for (auto& ctx : ctxs_) ctx->chosen_eng->deactivate_row(ctx->slot_row[idx]);
        }

        for (auto& ctx : ctxs_) ctx->union_eng->deactivate_row(ctx->slot_row[idx]);
        if (bound_ok()) enumerate(idx + 1);
        for (auto& ctx : ctxs_) ctx->union_eng->activate_row(ctx->slot_row[idx]);
    }

    // ---- loop-free residual coverage ---------------------------------------

    bool loop_free_family_one(ModelCtx& ctx, const std::vector<int>& set_slots) {
        MatchingEngine& eng = *ctx.set_eng;
        eng.set_all_active(false);
        for (int r = 0; r < ctx.n_base_rows; ++r) eng.set_row_active(r, true);
        for (int s : set_slots) eng.set_row_active(ctx.slot_row[static_cast<std::size_t>(s)], true);
        eng.solve();

        RowKey slot_key = make_key(set_slots, static_cast<int>(slots_.size()));
        std::vector<const std::vector<int>*> faults;
        std::vector<std::vector<int>> storage;
        scope_rows(ctx, set_slots, faults, storage);

        const std::vector<int> no_avoid;
        for (const auto* rows_i : faults)
            if (!pair_covered(ctx, slot_key, *rows_i, no_avoid)) return false;
        if (goal_.objective == PlacementObjective::FullDetectability) return true;
        // Unique isolation over loop-free residuals: for every ordered pair
        // some loop-free MSO responds to the first fault and not the second.
        for (const auto* rows_i : faults) {
            for (const auto* rows_j : faults) {
                if (rows_i == rows_j) continue;
                if (!pair_covered(ctx, slot_key, *rows_i, *rows_j)) return false;
            }
        }
        return true;
    }

    bool witness_hit(ModelCtx& ctx, const RowKey& slot_key, const std::vector<int>& must_rows,
                     const std::vector<int>& avoid_rows) const {
        for (int must : must_rows) {
            auto it = ctx.witnesses.find(must);
            if (it == ctx.witnesses.end()) continue;
            for (const auto& w : it->second) {
                bool slots_ok = true;
                for (std::size_t wi = 0; wi < w.slot_bits.size(); ++wi)
                    if (w.slot_bits[wi] & ~slot_key[wi]) {
                        slots_ok = false;
                        break;
                    }
                if (!slots_ok) continue;
                bool avoids = true;
                for (int a : avoid_rows)
                    if (std::binary_search(w.rows.begin(), w.rows.end(), a)) {
                        avoids = false;
                        break;
                    }
                if (avoids) return true;
            }
        }
        return false;
    }

    bool pair_covered(ModelCtx& ctx, const RowKey& slot_key, const std::vector<int>& must_rows,
                      const std::vector<int>& avoid_rows) {
        if (witness_hit(ctx, slot_key, must_rows, avoid_rows)) return true;

        MatchingEngine& eng = *ctx.set_eng;
        for (int a : avoid_rows) eng.deactivate_row(a);
        bool found = false;
        for (int must : must_rows) {
            eng.over_determined(over_rows_, over_cols_);
            if (!over_rows_[static_cast<std::size_t>(must)]) continue;
            std::vector<int> p;
            int over_col_count = 0;
            for (int r = 0; r < ctx.graph.n_rows; ++r)
                if (over_rows_[static_cast<std::size_t>(r)]) p.push_back(r);
            for (int c = 0; c < ctx.graph.n_cols; ++c)
                if (over_cols_[static_cast<std::size_t>(c)]) ++over_col_count;
            if (walk(ctx, p, static_cast<int>(p.size()) - over_col_count, must)) {
                found = true;
                break;
            }
        }
        for (int a : avoid_rows) eng.activate_row(a);
        return found;
    }

    /// Depth-first over the PSO lattice under `p`, removing one equivalence
    /// class at a time (never the one holding `must`), hunting for a
    /// loop-free MSO that contains `must`.
    bool walk(ModelCtx& ctx, const std::vector<int>& p, int surplus, int must) {
        if (surplus == 1) {
            RowKey key = make_key(p, ctx.graph.n_rows);
            bool lf;
            auto it = ctx.mso_loop_free.find(key);
            if (it != ctx.mso_loop_free.end()) {
                lf = it->second;
            } else {
                lf = rowset_loop_free(ctx.graph, p);
                ctx.mso_loop_free.emplace(std::move(key), lf);
                if (lf) remember_witness(ctx, p);
            }
            return lf;
        }
        RowKey memo_key = make_key(p, ctx.graph.n_rows);
        memo_key.push_back(static_cast<std::uint64_t>(must));
        if (ctx.walk_failed.count(memo_key)) return false;

        MatchingEngine& eng = *ctx.walk_eng;
        eng.set_all_active(false);
        for (int r : p) eng.set_row_active(r, true);
        eng.solve();

        std::vector<char> assigned(static_cast<std::size_t>(ctx.graph.n_rows), 0);
        std::vector<std::vector<int>> classes;
        std::vector<char> reduced_rows, reduced_cols;
        for (int r : p) {
            if (assigned[static_cast<std::size_t>(r)]) continue;
            eng.deactivate_row(r);
            eng.over_determined(reduced_rows, reduced_cols);
            std::vector<int> cls;
            for (int r2 : p)
                if (r2 == r || !reduced_rows[static_cast<std::size_t>(r2)]) {
                    cls.push_back(r2);
                    assigned[static_cast<std::size_t>(r2)] = 1;
                }
            eng.activate_row(r);
            classes.push_back(std::move(cls));
        }

        bool found = false;
        for (const std::vector<int>& cls : classes) {
            if (std::find(cls.begin(), cls.end(), must) != cls.end()) continue;
            std::vector<int> child;
            child.reserve(p.size() - cls.size());
            std::size_t k = 0;
            for (int r : p) {
                if (k < cls.size() && cls[k] == r) {
                    ++k;
                    continue;
                }
                child.push_back(r);
            }
            if (walk(ctx, child, surplus - 1, must)) {
                found = true;
                break;
            }
        }
        if (!found) ctx.walk_failed.insert(std::move(memo_key));
        return found;
    }

    void remember_witness(ModelCtx& ctx, const std::vector<int>& rows) {
        ModelCtx::Witness w;
        w.rows = rows;
        std::sort(w.rows.begin(), w.rows.end());
        w.slot_bits.assign((slots_.size() + 63) / 64, 0);
        for (std::size_t s = 0; s < slots_.size(); ++s) {
            if (std::binary_search(w.rows.begin(), w.rows.end(), ctx.slot_row[s]))
                w.slot_bits[s / 64] |= 1ull << (s % 64);
        }
        for (int r : w.rows) {
            bool is_fault_row =
                r >= ctx.n_base_rows ||
                std::any_of(ctx.base_fault_rows.begin(), ctx.base_fault_rows.end(),
                            [&](const std::vector<int>& fr) {
                                return std::find(fr.begin(), fr.end(), r) != fr.end();
                            });
            if (is_fault_row) ctx.witnesses[r].push_back(w);
        }
    }

    PlacementGoal goal_;
    std::vector<SensorLocation> slots_;
    int pack2_slot_ = -1;
    std::vector<std::unique_ptr<ModelCtx>> ctxs_;

    int budget_ = 0;
    std::vector<int> chosen_;
    std::vector<std::vector<int>> results_;
    std::vector<char> over_rows_, over_cols_;
};

std::vector<StructuralModel> model_family(const PackSpec& spec, const PlacementGoal& goal) {
    std::vector<StructuralModel> family;
    if (spec.topology == Topology::SP && goal.robust_esc && spec.with_faults) {
        for (int j = 1; j <= spec.parallel_count; ++j) {
            PackSpec variant = spec;
            variant.esc_module = j;
            family.push_back(pack_model(variant));
        }
    } else {
        family.push_back(pack_model(spec));
    }
    return family;
}

PlacementResult run_minimal(PlacementEngine& engine) {
    PlacementResult result;
    if (!engine.full_set_feasible()) return result;
    result.feasible = true;
    int k = engine.find_min_cardinality();
    result.cardinality = k;
    for (const std::vector<int>& set_slots : engine.enumerate_exact(k))
        result.minimal_sets.push_back(engine.to_sensor_set(set_slots));
    std::sort(result.minimal_sets.begin(), result.minimal_sets.end());
    result.choice_count = static_cast<long long>(result.minimal_sets.size());
    return result;
}

}  // namespace

struct PlacementChecker::Impl {
    PlacementEngine engine;
    std::vector<SensorLocation> slot_list;
    Impl(const PackSpec& spec, const std::vector<SensorLocation>& candidates,
         const PlacementGoal& goal)
        : engine(model_family(spec, goal), candidates, goal) {}
};

PlacementChecker::PlacementChecker(const PackSpec& spec,
                                   const std::vector<SensorLocation>& candidates,
                                   const PlacementGoal& goal) {
    spec.validate();
    impl_ = std::make_unique<Impl>(spec, candidates, goal);
    bool has_pack = std::any_of(candidates.begin(), candidates.end(), [](const SensorLocation& c) {
        return c.kind == SensorKind::PackCurrent;
    });
    if (has_pack) {
        impl_->slot_list.push_back({SensorKind::PackCurrent});
        impl_->slot_list.push_back({SensorKind::PackCurrent});
    }
    for (const SensorLocation& c : candidates) {
        if (c.kind == SensorKind::PackCurrent) continue;
        if (std::find(impl_->slot_list.begin(), impl_->slot_list.end(), c) == impl_->slot_list.end())
            impl_->slot_list.push_back(c);
    }
}

PlacementChecker::~PlacementChecker() = default;
PlacementChecker::PlacementChecker(PlacementChecker&&) noexcept = default;
PlacementChecker& PlacementChecker::operator=(PlacementChecker&&) noexcept = default;

const std::vector<SensorLocation>& PlacementChecker::slots() const { return impl_->slot_list; }

bool PlacementChecker::achieves(const std::vector<int>& slot_indices) {
    return impl_->engine.achieves(slot_indices);
}

PlacementResult minimal_sensor_sets(const PackSpec& spec,
                                    const std::vector<SensorLocation>& candidates,
                                    const PlacementGoal& goal) {
    spec.validate();
    PlacementEngine engine(model_family(spec, goal), candidates, goal);
    return run_minimal(engine);
}

PlacementResult minimal_sensor_sets(const StructuralModel& model,
                                    const std::vector<SensorLocation>& candidates,
                                    const PlacementGoal& goal) {
    PlacementEngine engine({model}, candidates, goal);
    return run_minimal(engine);
}

PlacementResult optimal_sensor_sets(const PackSpec& spec,
                                    const std::vector<SensorLocation>& candidates,
                                    const PlacementGoal& goal) {
    spec.validate();
    PlacementEngine engine(model_family(spec, goal), candidates, goal);
    PlacementResult result = run_minimal(engine);
    if (!result.feasible) return result;

    for (int k = result.cardinality; k <= static_cast<int>(engine.slot_count()); ++k) {
        std::vector<SensorSet> qualified;
        for (const std::vector<int>& set_slots : engine.enumerate_exact(k)) {
            if (engine.loop_free_family(set_slots)) qualified.push_back(engine.to_sensor_set(set_slots));
        }
        if (!qualified.empty()) {
            std::sort(qualified.begin(), qualified.end());
            result.optimal_cardinality = k;
            result.loop_free_optimal_sets = std::move(qualified);
            break;
        }
    }
    return result;
}

bool verify_closed_form(Topology topology, int n, int m, const PlacementResult& result) {
    if (!result.feasible || result.minimal_sets.empty()) return false;

    auto cell_sensors_ok = [&](const SensorSet& s, std::vector<SensorKind> allowed,
                               int per_module) {
        std::map<int, std::set<std::pair<int, int>>> cells_by_module;
        int cell_sensor_count = 0;
        for (const SensorLocation& loc : s.sensors) {
            if (loc.kind == SensorKind::PackCurrent) continue;
            if (std::find(allowed.begin(), allowed.end(), loc.kind) == allowed.end()) return false;
            int module = topology == Topology::PS ? loc.series : loc.parallel;
            cells_by_module[module].insert({loc.series, loc.parallel});
            ++cell_sensor_count;
        }
        int modules = topology == Topology::PS ? n : m;
        if (static_cast<int>(cells_by_module.size()) != modules) return false;
        for (const auto& [module, cells] : cells_by_module) {
            (void)module;
            if (static_cast<int>(cells.size()) != per_module) return false;
        }
        // One sensor per sensed cell.
        return cell_sensor_count == modules * per_module;
    };

    if (topology == Topology::PS) {
        int expect_card = n == 1 ? 2 + m : n == 2 ? 1 + 2 * m : n * m;
        int expect_pack = n == 1 ? 2 : n == 2 ? 1 : 0;
        if (result.cardinality != expect_card) return false;
        long long expect_choices = 1ll << (n * m);
        if (result.choice_count != expect_choices) return false;
        for (const SensorSet& s : result.minimal_sets) {
            if (s.pack_current_count() != expect_pack) return false;
            if (!cell_sensors_ok(s, {SensorKind::CellCurrent, SensorKind::CellTemperature}, m))
                return false;
        }
        return true;
    }
    if (topology == Topology::SP) {
        int per_module = m == 1 ? n : n - 1;
        if (result.cardinality != 2 + m * per_module) return false;
        for (const SensorSet& s : result.minimal_sets) {
            if (s.pack_current_count() != 2) return false;
            if (!cell_sensors_ok(s, {SensorKind::CellVoltage, SensorKind::CellTemperature},
                                 per_module))
                return false;
        }
        long long per_module_choices = (1ll << per_module) * (m == 1 ? 1 : n);
        long long expect_choices = 1;
        for (int j = 0; j < m; ++j) expect_choices *= per_module_choices;
        return result.choice_count == expect_choices;
    }
    return false;
}

std::string placement_report(const PackSpec& spec, const PlacementGoal& goal,
                             const PlacementResult& result) {
    std::ostringstream os;
    os << "placement: " << to_string(spec.topology);
    if (spec.topology != Topology::SingleCell)
        os << " n=" << spec.series_count << " m=" << spec.parallel_count;
    os << ", goal " << to_string(goal.objective);
    if (spec.topology == Topology::SP && goal.robust_esc)
        os << " (for every external-short module)";
    os << '\n';
    if (!result.feasible) {
        os << "infeasible: the full candidate set does not achieve the goal\n";
        return os.str();
    }
    os << "minimal cardinality: " << result.cardinality << '\n';
    os << "number of minimal sets: " << result.choice_count << '\n';
    if (!result.minimal_sets.empty()) {
        const SensorSet& first = result.minimal_sets.front();
        os << "pack-current sensors per set: " << first.pack_current_count() << '\n';
        os << "per-kind breakdown of the first set:";
        for (SensorKind kind :
             {SensorKind::PackCurrent, SensorKind::CellCurrent, SensorKind::CellVoltage,
              SensorKind::CellTemperature, SensorKind::ModuleCurrent, SensorKind::ModuleVoltage,
              SensorKind::ModuleTemperature}) {
            int count = first.count_of(kind);
            if (count) os << ' ' << count << "x " << to_string(kind);
        }
        os << '\n';
    }
    auto in_optimal = [&result](const SensorSet& s) {
        return std::find(result.loop_free_optimal_sets.begin(),
                         result.loop_free_optimal_sets.end(),
                         s) != result.loop_free_optimal_sets.end();
    };
    const bool have_flags = !result.loop_free_optimal_sets.empty();
    auto list_sets = [&os, &in_optimal, have_flags](const std::vector<SensorSet>& sets) {
        const std::size_t listed = std::min<std::size_t>(sets.size(), 64);
        for (std::size_t i = 0; i < listed; ++i) {
            os << "  {";
            const auto tokens = sets[i].tokens();
            for (std::size_t t = 0; t < tokens.size(); ++t) os << (t ? ", " : "") << tokens[t];
            os << "}";
            if (have_flags) os << (in_optimal(sets[i]) ? " [loop-free]" : " [loops]");
            os << '\n';
        }
        if (listed < sets.size()) os << "  ... (" << (sets.size() - listed) << " more)\n";
    };
    list_sets(result.minimal_sets);
    if (!result.loop_free_optimal_sets.empty()) {
        os << "optimal (loop-free) cardinality: " << result.optimal_cardinality << '\n';
        os << "number of optimal sets: " << result.loop_free_optimal_sets.size() << '\n';
        list_sets(result.loop_free_optimal_sets);
    }
    return os.str();
}

}  // namespace strudiag
