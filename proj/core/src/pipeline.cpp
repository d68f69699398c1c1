#include "freight/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>

#include "freight/csv.hpp"
#include "freight/damages.hpp"
#include "freight/econometrics.hpp"
#include "freight/errors.hpp"
#include "freight/inventory.hpp"
#include "freight/modal_shift.hpp"
#include "freight/parallel.hpp"
#include "freight/sr_ledger.hpp"
#include "freight/version.hpp"
#include "freight/zones.hpp"

namespace freight {

namespace {

std::string bool_cell(bool b) {
    return b ? "true" : "false";
}

std::string ratio_cell(double ratio) {
    if (std::isnan(ratio)) return "";  // undefined: zone without flows
    return format_double(ratio);
}

/// Lazily loaded shared state for one run.  Getters cache their results
/// so "all" computes each piece once.
class Pipeline {
public:
    Pipeline(const RunConfig& cfg, RunOptions options)
        : cfg_(cfg), options_(std::move(options)) {
        workers_ = options_.workers_override.value_or(cfg_.workers);
        if (workers_ < 1) throw ConfigError("worker count must be at least 1");
    }

    RunManifest& manifest() { return manifest_; }

    void note_input(const std::string& path) {
        manifest_.inputs[path] = file_digest(path);
    }

    void log(const std::string& line) const {
        if (!options_.quiet) std::cout << line << "\n";
    }

    // --- loading -------------------------------------------------------

    const LoadResult& links() {
        if (!links_) {
            links_ = load_links(cfg_.links_path);
            note_input(cfg_.links_path);
            manifest_.counts["links_total"] =
                static_cast<std::int64_t>(links_->accepted.size() + links_->rejected.size());
            manifest_.counts["links_accepted"] = static_cast<std::int64_t>(links_->accepted.size());
            manifest_.counts["links_rejected"] = static_cast<std::int64_t>(links_->rejected.size());
        }
        return *links_;
    }

    const std::vector<AnnualVmt>& vmt() {
        if (!vmt_) {
            const auto& accepted = links().accepted;
            std::vector<AnnualVmt> out(accepted.size());
            parallel_for(accepted.size(), workers_,
                         [&](std::size_t i) { out[i] = annual_vmt(accepted[i], cfg_.vmt); });
            vmt_ = std::move(out);
        }
        return *vmt_;
    }

    const ZoneRegistry& zones(ZoneKind kind) {
        auto& slot = kind == ZoneKind::County ? county_zones_ : tract_zones_;
        if (!slot) {
            const std::string& path =
                kind == ZoneKind::County ? cfg_.county_zones_path : cfg_.tract_zones_path;
            if (path.empty()) {
                throw ConfigError(std::string("no ") + std::string(to_string(kind)) +
                                  " zones file configured");
            }
            slot = load_zones(path);
            note_input(path);
            if (slot->kind() != kind) {
                throw ConfigError("zones file " + path + " declares kind '" +
                                  std::string(to_string(slot->kind())) + "'");
            }
            manifest_.counts[std::string("zones_") + std::string(to_string(kind))] =
                static_cast<std::int64_t>(slot->size());
        }
        return *slot;
    }

    const ZoneAssignment& assignment(ZoneKind kind) {
        auto& slot = kind == ZoneKind::County ? county_assignment_ : tract_assignment_;
        if (!slot) {
            slot = assign_links_to_zones(links().accepted, zones(kind), workers_);
            manifest_.counts[std::string("links_unassigned_") + std::string(to_string(kind))] =
                static_cast<std::int64_t>(slot->unassigned);
        }
        return *slot;
    }

    const EmissionFactorSet& factors() {
        if (!factors_) {
            auto sets = load_emission_factor_sets(cfg_.emission_factors_path);
            note_input(cfg_.emission_factors_path);
            const auto it = sets.find(cfg_.factor_set);
            if (it == sets.end()) {
                throw ConfigError("factor set '" + cfg_.factor_set + "' not present in " +
                                  cfg_.emission_factors_path);
            }
            factors_ = it->second;
        }
        return *factors_;
    }

    const EmissionsLedger& ledger(ZoneKind kind) {
        auto& slot = kind == ZoneKind::County ? county_ledger_ : tract_ledger_;
        if (!slot) {
            slot = aggregate_zone_emissions(links().accepted, vmt(), assignment(kind), zones(kind),
                                            factors());
        }
        return *slot;
    }

    const MSCGrid& msc_scaled() {
        if (!msc_scaled_) {
            const MSCGrid raw = load_msc_grid(cfg_.msc_header_path, cfg_.msc_values_path);
            note_input(cfg_.msc_header_path);
            note_input(cfg_.msc_values_path);
            const double factor = vsl_factor(cfg_.vsl);
            manifest_.parameters["vsl_factor"] = factor;
            manifest_.parameters["vsl_adjusted_usd"] = raw.base_vsl() * factor;
            msc_scaled_ = scale_msc(raw, factor, cfg_.vsl_target_dollar_year);
            log("vsl factor " + format_double(factor) + " -> adjusted VSL " +
                format_double(raw.base_vsl() * factor));
        }
        return *msc_scaled_;
    }

    const std::map<std::string, PollutantDoubles>& county_mscs() {
        if (!county_mscs_) {
            const auto& registry = zones(ZoneKind::County);
            const auto& grid = msc_scaled();
            const auto& ids = registry.zone_ids();
            std::vector<PollutantDoubles> values(ids.size());
            parallel_for(ids.size(), workers_, [&](std::size_t i) {
                values[i] = zone_msc(registry.zone_polygons(ids[i]), grid);
            });
            std::map<std::string, PollutantDoubles> out;
            for (std::size_t i = 0; i < ids.size(); ++i) out.emplace(ids[i], values[i]);
            county_mscs_ = std::move(out);
        }
        return *county_mscs_;
    }

    const SRMatrix& sr_matrix() {
        if (!sr_matrix_) {
            sr_matrix_ = load_sr_matrix(cfg_.sr_matrix_path);
            note_input(cfg_.sr_matrix_path);
        }
        return *sr_matrix_;
    }

    const SrLedger& sr_ledger() {
        if (!sr_ledger_) {
            const DamageFlows flows = receptor_damages(ledger(ZoneKind::County), sr_matrix());
            sr_ledger_ = decompose(flows, sr_matrix());

            double flow_total = 0.0;
            for (const auto& [p, list] : flows) {
                for (const auto& f : list) flow_total += f.usd;
            }
            const double source = sr_ledger_->total_source();
            const double receptor = sr_ledger_->total_receptor();
            const double exported = sr_ledger_->total_exported();
            const double imported = sr_ledger_->total_imported();
            const double scale = std::max({1.0, std::abs(flow_total)});
            if (std::abs(source - receptor) > 1e-9 * scale ||
                std::abs(source - flow_total) > 1e-9 * scale ||
                std::abs(exported - imported) > 1e-9 * scale) {
                throw DataError("source-receptor conservation violated");
            }
            log("sr conservation: source " + format_double(source) + " receptor " +
                format_double(receptor) + " exported " + format_double(exported) + " imported " +
                format_double(imported));
        }
        return *sr_ledger_;
    }

    const std::vector<ZoneCovariates>& covariates(ZoneKind kind) {
        auto& slot = kind == ZoneKind::County ? county_covariates_ : tract_covariates_;
        if (!slot) {
            const std::string& path = kind == ZoneKind::County ? cfg_.county_covariates_path
                                                               : cfg_.tract_covariates_path;
            if (path.empty()) {
                throw ConfigError(std::string("no ") + std::string(to_string(kind)) +
                                  " covariates file configured");
            }
            slot = load_covariates(path);
            note_input(path);
        }
        return *slot;
    }

    const std::vector<ShipmentRecord>& shipments() {
        if (!shipments_) {
            if (cfg_.shipments_path.empty()) throw ConfigError("no shipments file configured");
            shipments_ = load_shipments(cfg_.shipments_path);
            note_input(cfg_.shipments_path);
            manifest_.counts["shipments"] = static_cast<std::int64_t>(shipments_->size());
        }
        return *shipments_;
    }

    // --- stages --------------------------------------------------------

    void write(const std::string& filename, const std::string& content) {
        const auto path = std::filesystem::path(options_.out_dir) / filename;
        atomic_write_file(path.string(), content);
    }

    void stage_build_inventory() {
        const auto& load = links();

        CsvWriter rejections("line,reason,record");
        for (const auto& rec : load.rejected) {
            std::string record = rec.raw;
            std::replace(record.begin(), record.end(), ',', ';');
            rejections.row({std::to_string(rec.line_number), rec.reason, record});
        }
        write("link_rejections.csv", rejections.str());

        for (ZoneKind kind : {ZoneKind::County, ZoneKind::Tract}) {
            const auto& led = ledger(kind);
            CsvWriter out("zone_id,pollutant,tons,unit");
            for (const auto& [zone_id, tons] : led.entries()) {
                for (Pollutant p : kAllPollutants) {
                    out.row({zone_id, std::string(to_string(p)), format_double(tons[p]),
                             "t_metric"});
                }
            }
            write(std::string("inventory_") + std::string(to_string(kind)) + ".csv", out.str());
        }
        log("inventory: " + std::to_string(load.accepted.size()) + " links accepted, " +
            std::to_string(load.rejected.size()) + " rejected");
    }

    void stage_damages() {
        const auto& led = ledger(ZoneKind::County);
        const auto& mscs = county_mscs();
        const ZoneDamages damages = zone_damages(led, mscs);
        const Co2Damages co2 = co2_damages(led, cfg_.scc);
        const std::string dollar_year = std::to_string(cfg_.vsl_target_dollar_year);
        const std::string co2_year = std::to_string(cfg_.scc.dollar_year);

        CsvWriter per_zone("zone_id,pollutant,tons,unit,msc_usd_per_ton,damages_usd,dollar_year");
        for (const auto& [zone_id, usd] : damages.usd) {
            const auto& tons = led.zone_tons(zone_id);
            const auto& msc = mscs.at(zone_id);
            for (Pollutant p : kAirPollutants) {
                per_zone.row({zone_id, std::string(to_string(p)), format_double(tons[p]),
                              "t_metric", format_double(msc[p]), format_double(usd[p]),
                              dollar_year});
            }
        }
        write("damages_county.csv", per_zone.str());

        CsvWriter national("pollutant,damages_usd,dollar_year");
        for (Pollutant p : kAirPollutants) {
            national.row({std::string(to_string(p)), format_double(damages.national[p]),
                          dollar_year});
        }
        national.row({"CO2", format_double(co2.national), co2_year});
        write("damages_national.csv", national.str());

        CsvWriter co2_zone("zone_id,tons,unit,scc_usd_per_ton,damages_usd,dollar_year");
        for (const auto& [zone_id, usd] : co2.usd) {
            co2_zone.row({zone_id, format_double(led.zone_tons(zone_id)[Pollutant::CO2]),
                          "t_metric", format_double(cfg_.scc.usd_per_ton), format_double(usd),
                          co2_year});
        }
        write("co2_damages_county.csv", co2_zone.str());
    }

    void stage_sr_ledger() {
        const auto& led = sr_ledger();
        const std::string dollar_year = std::to_string(cfg_.vsl_target_dollar_year);

        CsvWriter out(
            "zone_id,internal_usd,exported_usd,imported_usd,source_total_usd,"
            "receptor_total_usd,net_importer,export_import_ratio,dollar_year");
        for (const auto& [zone_id, entry] : led.entries()) {
            const Classification cls = classify_and_ratio(entry);
            out.row({zone_id, format_double(entry.internal), format_double(entry.exported),
                     format_double(entry.imported), format_double(entry.source_total()),
                     format_double(entry.receptor_total()), bool_cell(cls.net_importer),
                     ratio_cell(cls.ratio), dollar_year});
        }
        write("sr_ledger_county.csv", out.str());

        CsvWriter by_pol("zone_id,pollutant,internal_usd,exported_usd,imported_usd,net_importer");
        for (const auto& [zone_id, entry] : led.entries()) {
            for (Pollutant p : kAirPollutants) {
                const Classification cls = classify_pollutant(entry, p);
                by_pol.row({zone_id, std::string(to_string(p)), format_double(entry.internal_p[p]),
                            format_double(entry.exported_p[p]), format_double(entry.imported_p[p]),
                            bool_cell(cls.net_importer)});
            }
        }
        write("sr_ledger_by_pollutant.csv", by_pol.str());
    }

    void stage_ej_regress() {
        std::int64_t dropped_rows = 0;
        for (ZoneKind kind : {ZoneKind::County, ZoneKind::Tract}) {
            const std::string level(to_string(kind));
            const auto& covs = covariates(kind);
            const auto& led = ledger(kind);

            std::map<Pollutant, FitResult> ols_fits;
            std::map<Pollutant, Design> ols_designs;
            for (Pollutant p : kAirPollutants) {
                Design design = build_design(covs, led, p);
                dropped_rows += static_cast<std::int64_t>(design.dropped_zero_emission +
                                                          design.dropped_bad_covariate);
                FitResult fit = ols_fit(design.X, design.y, design.column_names);
                ols_fits.emplace(p, std::move(fit));
                ols_designs.emplace(p, std::move(design));
            }
            write_regression_table("ols_" + level + ".csv", ols_fits, ols_designs);
            write_diagnostics(level, ols_fits, ols_designs);

            std::map<Pollutant, FitResult> logit_fits;
            std::map<Pollutant, Design> logit_designs;
            for (Pollutant p : kAirPollutants) {
                Design design = build_logit_design(covs, importer_flags(kind, p));
                dropped_rows += static_cast<std::int64_t>(design.dropped_bad_covariate);
                FitResult fit = logit_fit(design.X, design.y, design.column_names);
                logit_fits.emplace(p, std::move(fit));
                logit_designs.emplace(p, std::move(design));
            }
            write_regression_table("logit_" + level + ".csv", logit_fits, logit_designs);
        }
        manifest_.counts["regression_rows_dropped"] = dropped_rows;
    }

    void stage_modal_shift() {
        const PollutantDoubles baseline = ledger(ZoneKind::County).totals();
        const double eligible =
            eligible_tonmiles(shipments(), cfg_.scenario.distance_threshold_mi);
        const PollutantDoubles rail_ef =
            cfg_.rail_ef_override ? *cfg_.rail_ef_override : rail_ef_per_tonmile(cfg_.rail);
        const auto sweep = shift_sweep(baseline, eligible, cfg_.scenario, factors(), rail_ef);

        CsvWriter out("fraction_shifted,pollutant,pct_change");
        for (const auto& row : sweep) {
            for (Pollutant p : kAllPollutants) {
                out.row({format_double(row.fraction_shifted), std::string(to_string(p)),
                         format_double(row.pct_change[p])});
            }
        }
        write("modal_shift.csv", out.str());
        manifest_.parameters["eligible_tonmiles"] = eligible;
    }

private:
    std::map<std::string, bool> importer_flags(ZoneKind kind, Pollutant p) {
        const auto& led = sr_ledger();
        std::map<std::string, bool> flags;
        if (kind == ZoneKind::County) {
            for (const auto& [zone_id, entry] : led.entries()) {
                flags[zone_id] = classify_pollutant(entry, p).net_importer;
            }
            return flags;
        }
        // Tracts inherit the flag of their parent county.
        const auto& registry = zones(ZoneKind::Tract);
        for (const auto& tract_id : registry.zone_ids()) {
            const auto parent = registry.parent_of(tract_id);
            if (!parent) continue;
            const auto it = led.entries().find(*parent);
            if (it == led.entries().end()) continue;
            flags[tract_id] = classify_pollutant(it->second, p).net_importer;
        }
        return flags;
    }

    void write_regression_table(const std::string& filename,
                                const std::map<Pollutant, FitResult>& fits,
                                const std::map<Pollutant, Design>& designs) {
        std::string header = "term";
        for (Pollutant p : kAirPollutants) {
            const std::string name(to_string(p));
            header += "," + name + "_coef," + name + "_se," + name + "_stars";
        }
        CsvWriter out(std::move(header));

        // Predictors first, intercept (constant) last, as in the tables.
        const auto& names = design_column_names();
        std::vector<std::size_t> term_order;
        for (std::size_t j = 1; j < names.size(); ++j) term_order.push_back(j);
        term_order.push_back(0);

        for (std::size_t j : term_order) {
            std::vector<std::string> cells{j == 0 ? "constant" : names[j]};
            for (Pollutant p : kAirPollutants) {
                const FitResult& fit = fits.at(p);
                const double beta = fit.coefficients(static_cast<Eigen::Index>(j));
                const double se = fit.standard_errors(static_cast<Eigen::Index>(j));
                cells.push_back(format_double(beta));
                cells.push_back(format_double(se));
                cells.push_back(significance_stars(coefficient_p_value(beta, se)));
            }
            out.row(cells);
        }

        auto stat_row = [&](const std::string& label, auto getter) {
            std::vector<std::string> cells{label};
            for (Pollutant p : kAirPollutants) {
                cells.push_back(getter(fits.at(p), designs.at(p)));
                cells.push_back("");
                cells.push_back("");
            }
            out.row(cells);
        };

        stat_row("observations", [](const FitResult& f, const Design&) {
            return std::to_string(f.n);
        });
        const bool is_ols = fits.begin()->second.kind == FitKind::Ols;
        if (is_ols) {
            stat_row("r_squared",
                     [](const FitResult& f, const Design&) { return format_double(f.r2); });
            stat_row("adj_r_squared",
                     [](const FitResult& f, const Design&) { return format_double(f.adj_r2); });
            stat_row("residual_std_error", [](const FitResult& f, const Design&) {
                return format_double(f.residual_std_error);
            });
            stat_row("f_statistic", [](const FitResult& f, const Design&) {
                return format_double(f.f_statistic);
            });
            stat_row("df_model", [](const FitResult& f, const Design&) {
                return std::to_string(f.k - 1);
            });
            stat_row("df_residual",
                     [](const FitResult& f, const Design&) { return std::to_string(f.dof); });
            stat_row("dropped_zero_emission", [](const FitResult&, const Design& d) {
                return std::to_string(d.dropped_zero_emission);
            });
        } else {
            stat_row("log_likelihood", [](const FitResult& f, const Design&) {
                return format_double(f.log_likelihood);
            });
            stat_row("aic",
                     [](const FitResult& f, const Design&) { return format_double(f.aic); });
            stat_row("iterations", [](const FitResult& f, const Design&) {
                return std::to_string(f.iterations);
            });
        }
        stat_row("dropped_bad_covariate", [](const FitResult&, const Design& d) {
            return std::to_string(d.dropped_bad_covariate);
        });

        write(filename, out.str());
    }

    void write_diagnostics(const std::string& level, const std::map<Pollutant, FitResult>& fits,
                           const std::map<Pollutant, Design>& designs) {
        CsvWriter qq("pollutant,theoretical_quantile,sample_quantile");
        CsvWriter stud("pollutant,zone_id,studentized_residual,degenerate");
        for (Pollutant p : kAirPollutants) {
            const Diagnostics diag = diagnostics(fits.at(p));
            for (const auto& [theoretical, sample] : diag.qq_points) {
                qq.row({std::string(to_string(p)), format_double(theoretical),
                        format_double(sample)});
            }
            const auto& zone_ids = designs.at(p).row_zone_ids;
            for (std::size_t i = 0; i < diag.studentized_residuals.size(); ++i) {
                stud.row({std::string(to_string(p)), zone_ids[i],
                          format_double(diag.studentized_residuals[i]),
                          bool_cell(diag.degenerate)});
            }
        }
        write("qq_" + level + ".csv", qq.str());
        write("studentized_" + level + ".csv", stud.str());
    }

    RunConfig cfg_;
    RunOptions options_;
    unsigned workers_ = 1;
    RunManifest manifest_;

    std::optional<LoadResult> links_;
    std::optional<std::vector<AnnualVmt>> vmt_;
    std::optional<ZoneRegistry> county_zones_;
    std::optional<ZoneRegistry> tract_zones_;
    std::optional<ZoneAssignment> county_assignment_;
    std::optional<ZoneAssignment> tract_assignment_;
    std::optional<EmissionFactorSet> factors_;
    std::optional<EmissionsLedger> county_ledger_;
    std::optional<EmissionsLedger> tract_ledger_;
    std::optional<MSCGrid> msc_scaled_;
    std::optional<std::map<std::string, PollutantDoubles>> county_mscs_;
    std::optional<SRMatrix> sr_matrix_;
    std::optional<SrLedger> sr_ledger_;
    std::optional<std::vector<ZoneCovariates>> county_covariates_;
    std::optional<std::vector<ZoneCovariates>> tract_covariates_;
    std::optional<std::vector<ShipmentRecord>> shipments_;
};

}  // namespace

RunManifest run_command(const std::string& command, const RunOptions& options) {
    const auto& known = pipeline_commands();
    if (std::find(known.begin(), known.end(), command) == known.end()) {
        throw ConfigError("unknown command: " + command);
    }
    if (options.out_dir.empty()) throw ConfigError("output directory required");

    const auto started = std::chrono::steady_clock::now();

    const RunConfig cfg = load_config(options.config_path);
    Pipeline pipeline(cfg, options);
    pipeline.manifest().command = command;
    pipeline.manifest().engine_version = kEngineVersion;
    pipeline.manifest().config_hash = file_digest(options.config_path);

    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);

    if (command == "build-inventory" || command == "all") pipeline.stage_build_inventory();
    if (command == "damages" || command == "all") pipeline.stage_damages();
    if (command == "sr-ledger" || command == "all") pipeline.stage_sr_ledger();
    if (command == "ej-regress" || command == "all") pipeline.stage_ej_regress();
    if (command == "modal-shift" || command == "all") pipeline.stage_modal_shift();

    const auto elapsed = std::chrono::steady_clock::now() - started;
    pipeline.manifest().wall_time_seconds =
        std::chrono::duration_cast<std::chrono::duration<double>>(elapsed).count();
    write_manifest(pipeline.manifest(), options.out_dir);
    return pipeline.manifest();
}

}  // namespace freight
