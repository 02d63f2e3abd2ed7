// frobctl: exact Frobenius-semilinear algebra on small modules.
//
// exit codes: 0 success, 1 error, 2 verified negative finding
#include <CLI11.hpp>

#include <iostream>

#include "frobmod/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact unit Frobenius-module calculator"};
    app.require_subcommand(1);

    frob::Command cmd;

    auto add_common = [&](CLI::App* sub, bool takes_files) {
        sub->add_flag("--machine", cmd.machine, "emit machine-readable JSON");
        sub->add_option("--max-power", cmd.max_power, "bound on the power index r");
        sub->add_option("--cap", cmd.cap, "subspace enumeration cap");
        sub->add_option("--degree-guard", cmd.degree_guard, "canonical degree guard");
        if (takes_files) {
            sub->add_option("inputs", cmd.inputs, "module description files")->required();
            sub->add_flag("--batch", cmd.batch, "process inputs concurrently");
        }
    };

    auto* power = app.add_subcommand("power", "iterated power matrix A_r");
    power->add_option("--r", cmd.r, "power index")->required();
    add_common(power, true);

    auto* basechange = app.add_subcommand("basechange", "conjugated power matrix C^-1 A_r C^[q^r]");
    basechange->add_option("--r", cmd.r, "power index")->required();
    add_common(basechange, true);

    auto* fixed = app.add_subcommand("fixed", "fixed points of A_r v^[q^r] = v");
    fixed->add_option("--r", cmd.r, "power index")->required();
    add_common(fixed, true);

    auto* subspaces = app.add_subcommand("subspaces", "all stable subspaces");
    subspaces->add_option("--r", cmd.r, "power index")->required();
    add_common(subspaces, true);

    auto* simple = app.add_subcommand("simple", "simplicity test (exit 2 when not simple)");
    simple->add_option("--r", cmd.r, "power index")->required();
    add_common(simple, true);

    auto* series = app.add_subcommand("series", "composition series and length");
    series->add_option("--r", cmd.r, "power index")->required();
    add_common(series, true);

    auto* geom = app.add_subcommand("geomlength", "geometric length with witness degree");
    geom->add_option("--smax", cmd.smax, "extension search bound");
    add_common(geom, true);

    auto* descent = app.add_subcommand("descent", "preimage of the subspace payload");
    descent->add_option("--r", cmd.r, "power index")->required();
    add_common(descent, true);

    auto* root = app.add_subcommand("root", "root construction from the submodule payload");
    root->add_option("--mmax", cmd.mmax, "Frobenius-sum bound");
    add_common(root, true);

    auto* certify = app.add_subcommand("certify", "simplicity certificates for [[0,1],[1,x]]");
    certify->add_option("--p", cmd.p, "characteristic")->required();
    certify->add_option("--e", cmd.e, "twist");
    certify->add_option("--rmax", cmd.rmax, "certificate depth");
    add_common(certify, false);

    auto* adjoined = app.add_subcommand("adjoined", "adjoined-root fixed-vector check");
    adjoined->add_option("--p", cmd.p, "characteristic")->required();
    add_common(adjoined, false);

    CLI11_PARSE(app, argc, argv);
    cmd.verb = app.get_subcommands().front()->get_name();

    frob::CliResult res = frob::run_command(cmd);
    if (!res.output.empty()) std::cout << res.output;
    if (!res.error.empty()) std::cerr << res.error;
    return res.exit_code;
}
