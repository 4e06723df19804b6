// Command-line front end: load/validate systems, run the verification
// suite, evaluate pairings and inductive-limit operators, emit generator
// systems.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hscale/io.hpp"
#include "hscale/jtl.hpp"
#include "hscale/opalg.hpp"
#include "hscale/rhs.hpp"
#include "hscale/verify.hpp"

namespace {

using namespace hscale;

constexpr int kExitPass = 0;
constexpr int kExitFail = 2;
constexpr int kExitInput = 3;

void print_report(const Report& rep, bool as_json) {
  if (as_json) {
    std::cout << report_to_json(rep) << "\n";
    return;
  }
  for (const auto& c : rep.checks) {
    std::cout << "[" << to_string(c.verdict) << "] " << c.id << " (" << c.anchor << ")"
              << " margin=" << c.margin;
    if (!c.witness.empty()) std::cout << "  -- " << c.witness;
    std::cout << "\n";
  }
  std::cout << (rep.all_pass() ? "all checks passed" : "FAILURES present") << "\n";
}

Report validation_report(const SystemFile& file) {
  Report rep;
  const ValidationReport v = file.system.validate();
  for (const auto& e : v.entries) {
    std::string witness = e.witness;
    if (e.axiom == "contraction" && e.pass && !v.marginal_edges.empty()) {
      witness = "marginal edges:";
      for (const auto& m : v.marginal_edges) witness += " [" + m + "]";
    }
    rep.checks.push_back({"axiom." + e.axiom, "S2 axioms", e.pass ? Verdict::Pass : Verdict::Fail,
                          e.margin, witness});
  }
  if (file.family) {
    const OFamilyReport fr = validate_ofamily(*file.family);
    std::string witness;
    for (const auto& [a, b] : fr.unbounded_pairs) witness += "{" + a + ", " + b + "} ";
    rep.checks.push_back({"ofamily.directed", "S3 Example (O-family order)",
                          fr.directed ? Verdict::Pass : Verdict::Fail,
                          static_cast<double>(fr.unbounded_pairs.size()), witness});
  }
  return rep;
}

std::string format_dx(const DxElement& x) {
  std::string out = "base=" + x.base + " vec=[";
  for (Eigen::Index i = 0; i < x.vec.size(); ++i) {
    if (i) out += ", ";
    out += format_complex15(x.vec(i));
  }
  return out + "]";
}

void print_matrix(const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::cout << "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) std::cout << ", ";
      std::cout << format_complex15(m(r, c));
    }
    std::cout << "]\n";
  }
}

const OperatorDef& find_operator(const SystemFile& file, const std::string& name) {
  for (const auto& o : file.operators)
    if (o.name == name) return o;
  throw SchemaError("no operator named '" + name + "' in the system file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite models of directed contractive systems of Hilbert spaces"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  int samples = 200;
  bool as_json = false;
  double tol = 1e-9;
  if (const char* env = std::getenv("HSCALE_TOL")) tol = std::atof(env);
  app.add_option("--seed", seed, "RNG seed for sampling checks");
  app.add_option("--samples", samples, "sample budget for sampling checks");
  app.add_flag("--json", as_json, "emit reports as JSON");
  app.add_option("--tol", tol, "generic comparison tolerance");

  std::string path;
  auto* validate = app.add_subcommand("validate", "check the system axioms");
  validate->add_option("file", path, "system file")->required();

  auto* verify = app.add_subcommand("verify", "run the full verification suite");
  verify->add_option("file", path, "system file")->required();

  std::string dx_arg, d_arg;
  auto* pair_cmd = app.add_subcommand("pair", "evaluate the duality form B(x, d)");
  pair_cmd->add_option("file", path, "system file")->required();
  pair_cmd->add_option("--dx", dx_arg, "D^x representative as base:v1,v2,...")->required();
  pair_cmd->add_option("--d", d_arg, "coherent family by its anchor vector")->required();

  std::string op_name, op_action, op_with, op_d;
  auto* op_cmd = app.add_subcommand("op", "apply/adjoint/product of file-defined operators");
  op_cmd->add_option("file", path, "system file")->required();
  op_cmd->add_option("--op", op_name, "operator name from the file")->required();
  op_cmd->add_option("action", op_action, "apply | adjoint | product")->required();
  op_cmd->add_option("--d", op_d, "anchor vector (for apply)");
  op_cmd->add_option("--with", op_with, "second operator name (for product)");

  std::string gen_kind = "shift-chain", gen_out;
  GeneratorSpec spec;
  std::string weight_form = "one-plus-abs-pow";
  auto* gen_cmd = app.add_subcommand("gen", "write a generator system to a file");
  gen_cmd->add_option("--kind", gen_kind, "shift-chain | weighted-grid | ofamily-seed");
  gen_cmd->add_option("--out", gen_out, "output path")->required();
  gen_cmd->add_option("--dim", spec.dim, "space dimension");
  gen_cmd->add_option("--levels", spec.levels, "chain length");
  gen_cmd->add_option("--xmin", spec.xmin, "grid lower bound");
  gen_cmd->add_option("--xmax", spec.xmax, "grid upper bound");
  gen_cmd->add_option("--points", spec.points, "grid size");
  gen_cmd->add_option("--alphas", spec.alphas, "weight exponents");
  gen_cmd->add_option("--weight-form", weight_form, "one-plus-abs-pow | paper-literal");
  gen_cmd->add_option("--gen-seed", spec.seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      const SystemFile file = load_system_file(path);
      const Report rep = validation_report(file);
      print_report(rep, as_json);
      return rep.all_pass() ? kExitPass : kExitFail;
    }
    if (verify->parsed()) {
      const SystemFile file = load_system_file(path);
      const VerifyOptions opt{seed, samples, tol};
      const Report rep =
          run_verification(file.system, opt, file.family ? &*file.family : nullptr);
      print_report(rep, as_json);
      return rep.all_pass() ? kExitPass : kExitFail;
    }
    if (pair_cmd->parsed()) {
      const SystemFile file = load_system_file(path);
      const auto colon = dx_arg.find(':');
      if (colon == std::string::npos)
        throw SchemaError("--dx expects base:v1,v2,...");
      const DxElement x =
          theta(file.system, dx_arg.substr(0, colon), parse_vector(dx_arg.substr(colon + 1)));
      const DElement d = make_delement(file.system, parse_vector(d_arg));
      std::cout << format_complex15(pairing(file.system, x, d)) << "\n";
      return kExitPass;
    }
    if (op_cmd->parsed()) {
      const SystemFile file = load_system_file(path);
      const OperatorDef& def = find_operator(file, op_name);
      const LimOperator x = lift(file.system, def.base, def.matrix);
      if (op_action == "apply") {
        if (op_d.empty()) throw SchemaError("apply needs --d");
        const DElement d = make_delement(file.system, parse_vector(op_d));
        std::cout << format_dx(apply(file.system, x, d)) << "\n";
      } else if (op_action == "adjoint") {
        const LimOperator xd = involution(file.system, x);
        std::cout << "base=" << xd.base << "\n";
        print_matrix(xd.mat);
      } else if (op_action == "product") {
        if (op_with.empty()) throw SchemaError("product needs --with");
        const OperatorDef& def2 = find_operator(file, op_with);
        const LimOperator y = lift(file.system, def2.base, def2.matrix);
        const ProductResult r = partial_product(file.system, x, y, tol);
        if (!r.defined()) {
          std::cout << "UNDEFINED residual=" << r.residual << " witness=(" << r.witness.first
                    << ", " << r.witness.second << ")\n";
        } else {
          std::cout << "base=" << r.product->base << "\n";
          print_matrix(r.product->mat);
        }
      } else {
        throw SchemaError("unknown action '" + op_action + "'");
      }
      return kExitPass;
    }
    if (gen_cmd->parsed()) {
      if (gen_kind == "shift-chain")
        spec.kind = GeneratorSpec::Kind::ShiftChain;
      else if (gen_kind == "weighted-grid")
        spec.kind = GeneratorSpec::Kind::WeightedGrid;
      else if (gen_kind == "ofamily-seed")
        spec.kind = GeneratorSpec::Kind::OFamilySeed;
      else
        throw SchemaError("unknown generator kind '" + gen_kind + "'");
      spec.weight_form = weight_form == "paper-literal" ? WeightForm::PaperLiteral
                                                        : WeightForm::OnePlusAbsPow;
      const ContractiveSystem s = build_generator(spec);
      std::ofstream out(gen_out);
      if (!out) throw SchemaError("cannot write '" + gen_out + "'");
      out << system_to_json(s) << "\n";
      std::cout << "wrote " << gen_out << "\n";
      return kExitPass;
    }
  } catch (const SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitInput;
}
