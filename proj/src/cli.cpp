#include "metfib/cli.hpp"

#include "metfib/builtins.hpp"
#include "metfib/cech.hpp"
#include "metfib/fibration.hpp"
#include "metfib/io.hpp"
#include "metfib/magnitude.hpp"
#include "metfib/pi1.hpp"
#include "metfib/principal.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace metfib {

namespace {

bool builtin_name(const std::string &uri, std::string &name) {
	const std::string prefix = "builtin:";
	if (uri.rfind(prefix, 0) != 0)
		return false;
	name = uri.substr(prefix.size());
	return true;
}

bool ends_with(const std::string &s, const std::string &suffix) {
	return s.size() >= suffix.size() &&
	       s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

FiniteMetricSpace resolve_space(const std::string &uri) {
	std::string name;
	if (builtin_name(uri, name)) {
		try {
			return builtin_space(name);
		} catch (const Error &) {
			throw ParseError(uri + ": unknown builtin space");
		}
	}
	if (ends_with(uri, ".wg"))
		return shortest_path_metric(read_wg_file(uri));
	return read_dmat_file(uri);
}

FiniteNormedGroup resolve_group(const std::string &uri) {
	std::string name;
	if (builtin_name(uri, name)) {
		try {
			return builtin_group(name);
		} catch (const Error &) {
			throw ParseError(uri + ": unknown builtin group");
		}
	}
	return read_grp_file(uri);
}

MetricFibration resolve_fibration(const std::string &uri) {
	std::string name;
	if (builtin_name(uri, name)) {
		if (name == "K33fib")
			return k33_fibration();
		throw ParseError(uri + ": unknown builtin fibration");
	}
	return read_fib_file(uri);
}

void write_file(std::ostream &report, const std::string &path,
                const std::function<void(std::ostream &)> &body) {
	std::ofstream f(path);
	if (!f)
		throw Error("cannot write '" + path + "'");
	body(f);
	report << "wrote: " << path << "\n";
}

std::string describe(const std::string &uri, const FiniteMetricSpace &x) {
	return uri + " (" + std::to_string(x.n()) + " points)";
}

int report_validation(std::ostream &out, const std::optional<Violation> &v) {
	if (v) {
		out << "result: invalid\n";
		out << "violation: " << v->message() << "\n";
		return 1;
	}
	out << "result: valid\n";
	return 0;
}

std::string loop_text(const FiniteMetricSpace &x, const std::vector<int> &points) {
	std::string s;
	for (int p : points)
		s += (s.empty() ? "" : ",") + x.labels[p];
	return s;
}

std::string word_text(const GroupPresentation &p, const std::vector<int> &word) {
	if (word.empty())
		return "1";
	std::string s;
	for (int letter : word) {
		if (!s.empty())
			s += " ";
		s += letter > 0 ? p.generators[letter - 1]
		                : p.generators[-letter - 1] + "^-1";
	}
	return s;
}

// 6/(1 + 3q + 2q^2), the magnitude both prisms share.
Rational prism_magnitude(const Rational &q) {
	return Rational(6) / (Rational(1) + Rational(3) * q + Rational(2) * q * q);
}

// n/(1 + (n-1)q) for the complete graph on n points.
Rational complete_magnitude(int n, const Rational &q) {
	return Rational(n) / (Rational(1) + Rational(n - 1) * q);
}

int cmd_check_metric(std::ostream &out, const std::string &uri) {
	FiniteMetricSpace x = resolve_space(uri);
	out << "command: check-metric\n";
	out << "space: " << describe(uri, x) << "\n";
	out << "flavor: " << flavor_name(x.flavor) << "\n";
	return report_validation(out, validate_space(x));
}

int cmd_graph_metric(std::ostream &out, const std::string &uri, const std::string &out_path) {
	WeightedGraph g = read_wg_file(uri);
	FiniteMetricSpace x = shortest_path_metric(g);
	if (out_path.empty()) {
		write_dmat(out, x);
		return 0;
	}
	out << "command: graph-metric\n";
	out << "space: " << describe(uri, x) << "\n";
	out << "flavor: " << flavor_name(x.flavor) << "\n";
	write_file(out, out_path, [&](std::ostream &f) { write_dmat(f, x); });
	return 0;
}

int cmd_check_fibration(std::ostream &out, const std::string &uri) {
	MetricFibration f = resolve_fibration(uri);
	out << "command: check-fibration\n";
	out << "total: " << describe(uri, f.total) << "\n";
	out << "base-points: " << f.base.n() << "\n";
	return report_validation(out, validate_fibration(f));
}

int cmd_check_action(std::ostream &out, const std::string &uri) {
	MetricAction a = read_act_file(uri);
	out << "command: check-action\n";
	out << "base: " << describe(uri, a.base) << "\n";
	return report_validation(out, validate_action(a));
}

int cmd_grothendieck(std::ostream &out, const std::string &uri, const std::string &out_path) {
	MetricAction a = read_act_file(uri);
	if (auto v = validate_action(a)) {
		out << "command: grothendieck\n";
		out << "base: " << describe(uri, a.base) << "\n";
		return report_validation(out, v);
	}
	MetricFibration f = grothendieck(a);
	if (out_path.empty()) {
		write_fib(out, f);
		return 0;
	}
	out << "command: grothendieck\n";
	out << "base: " << describe(uri, a.base) << "\n";
	out << "total-points: " << f.total.n() << "\n";
	write_file(out, out_path, [&](std::ostream &g) { write_fib(g, f); });
	return 0;
}

int cmd_classify(std::ostream &out, const std::string &base_uri, const std::string &fiber_uri,
                 const std::string &out_dir) {
	FiniteMetricSpace base = resolve_space(base_uri);
	FiniteMetricSpace fiber = resolve_space(fiber_uri);
	out << "command: classify\n";
	out << "base: " << describe(base_uri, base) << "\n";
	out << "fiber: " << describe(fiber_uri, fiber) << "\n";

	AutGroupResult aut = aut_group(fiber);
	out << "fiber-isometries: " << aut.group.n() << "\n";
	int pruned = 0;
	for (const auto &v : aut.group.norm)
		if (v.is_inf())
			++pruned;
	if (pruned > 0)
		out << "infinite-norm-transports-pruned: " << pruned << "\n";

	std::vector<PrincipalAction> reps = enumerate_principal(base, aut.group);
	std::vector<MetricFibration> classes = classify_fibrations(base, fiber);
	out << "classes: " << classes.size() << "\n";

	for (size_t c = 0; c < classes.size(); ++c) {
		out << "class " << c << ": "
		    << (is_trivial(classes[c]) ? "trivial" : "nontrivial") << "\n";
		HolonomyDatum h = make_holonomy_datum(reps[c], 0);
		for (int i = 1; i < base.n(); ++i)
			for (int j = i + 1; j < base.n(); ++j) {
				std::vector<int> loop = {0, i, j, 0};
				out << "class " << c << " holonomy ("
				    << loop_text(base, loop)
				    << "): " << aut.group.elements[h.eval(loop)] << "\n";
			}
	}

	if (base_uri == "builtin:K3" && fiber_uri == "builtin:K2" && classes.size() == 2 &&
	    find_fibration_isomorphism(classes[1], k33_fibration()))
		out << "known: class 1 total is isometric to K3,3\n";

	if (!out_dir.empty()) {
		std::filesystem::create_directories(out_dir);
		for (size_t c = 0; c < classes.size(); ++c) {
			std::string path =
			    (std::filesystem::path(out_dir) / ("class" + std::to_string(c) + ".fib"))
			        .string();
			write_file(out, path, [&](std::ostream &f) { write_fib(f, classes[c]); });
		}
	}
	return 0;
}

int cmd_classify_principal(std::ostream &out, const std::string &base_uri,
                           const std::string &group_uri) {
	FiniteMetricSpace base = resolve_space(base_uri);
	FiniteNormedGroup group = resolve_group(group_uri);
	out << "command: classify-principal\n";
	out << "base: " << describe(base_uri, base) << "\n";
	out << "group: " << group_uri << " (order " << group.n() << ")\n";
	if (auto v = validate_group(group)) {
		out << "result: invalid group\n";
		out << "violation: " << v->message() << "\n";
		return 1;
	}
	std::vector<PrincipalAction> reps = enumerate_principal(base, group);
	out << "classes: " << reps.size() << "\n";
	for (size_t c = 0; c < reps.size(); ++c)
		for (int i = 1; i < base.n(); ++i)
			for (int j = i + 1; j < base.n(); ++j)
				out << "class " << c << " f(" << base.labels[i] << ","
				    << base.labels[j]
				    << "): " << group.elements[reps[c].f[i][j]] << "\n";
	return 0;
}

int cmd_pi1(std::ostream &out, const std::string &base_uri,
            const std::vector<std::string> &loops, int bound) {
	FiniteMetricSpace base = resolve_space(base_uri);
	out << "command: pi1\n";
	out << "base: " << describe(base_uri, base) << "\n";
	if (base.n() == 0)
		throw PreconditionError("empty space has no basepoint");
	ColineComplex complex = coline_complex(base);
	out << "basepoint: " << base.labels[0] << "\n";
	out << "triangles: " << complex.triangles.size() << "\n";

	GroupPresentation p = pi1_presentation(complex, 0);
	out << "generators: " << p.generators.size() << "\n";
	for (size_t i = 0; i < p.generators.size(); ++i)
		out << "generator " << i << ": " << p.generators[i] << "\n";
	out << "relators: " << p.relators.size() << "\n";
	for (size_t i = 0; i < p.relators.size(); ++i)
		out << "relator " << i << ": " << word_text(p, p.relators[i]) << "\n";

	out << "abelianization: " << abelianization(p).to_string() << "\n";
	TrivialityResult t = is_trivial_group(p);
	const char *verdicts[] = {"trivial", "nontrivial", "unknown"};
	out << "triviality: " << verdicts[static_cast<int>(t.verdict)] << "\n";
	out << "triviality-detail: " << t.detail << "\n";

	for (const auto &spec : loops) {
		LoopClass l;
		std::istringstream ss(spec);
		std::string lab;
		while (std::getline(ss, lab, ',')) {
			int idx = base.index_of(lab);
			if (idx < 0)
				throw PreconditionError("loop point '" + lab + "' is not in the space");
			l.points.push_back(idx);
		}
		if (l.points.size() < 2 || l.points.front() != l.points.back())
			throw PreconditionError("loop '" + spec +
			                        "' must start and end at the same point");
		l.basepoint = l.points.front();
		out << "loop " << spec << " bound: "
		    << to_string(loop_norm_upper_bound(base, l, bound)) << "\n";
	}
	return 0;
}

int cmd_cech(std::ostream &out, const std::string &base_uri, const std::string &group_uri) {
	FiniteMetricSpace base = resolve_space(base_uri);
	FiniteNormedGroup group = resolve_group(group_uri);
	out << "command: cech\n";
	out << "base: " << describe(base_uri, base) << "\n";
	out << "group: " << group_uri << " (order " << group.n() << ")\n";
	if (auto v = validate_group(group)) {
		out << "result: invalid group\n";
		out << "violation: " << v->message() << "\n";
		return 1;
	}
	std::vector<Cocycle> classes = enumerate_cocycle_classes(base, group);
	out << "classes: " << classes.size() << "\n";
	for (size_t c = 0; c < classes.size(); ++c)
		for (int q = 1; q < base.n(); ++q)
			for (int p = 1; p < q; ++p)
				out << "class " << c << " a(0," << q << "," << p
				    << "): " << group.elements[classes[c].at(0, q, p)] << "\n";
	return 0;
}

int cmd_magnitude(std::ostream &out, const std::string &uri,
                  const std::vector<std::string> &product_uris,
                  const std::vector<std::string> &q_tokens) {
	std::vector<Rational> qs;
	for (const auto &tok : q_tokens) {
		try {
			qs.push_back(parse_rational(tok));
		} catch (const std::invalid_argument &e) {
			throw ParseError(std::string("--q: ") + e.what());
		}
	}
	if (qs.empty())
		qs = {Rational(1, 5), Rational(1, 3), Rational(1, 2), Rational(2, 3),
		      Rational(4, 5)};

	out << "command: magnitude\n";
	if (!product_uris.empty()) {
		FiniteMetricSpace total = resolve_space(product_uris[0]);
		FiniteMetricSpace base = resolve_space(product_uris[1]);
		FiniteMetricSpace fiber = resolve_space(product_uris[2]);
		out << "total: " << describe(product_uris[0], total) << "\n";
		out << "base: " << describe(product_uris[1], base) << "\n";
		out << "fiber: " << describe(product_uris[2], fiber) << "\n";
		ProductReport report = check_product(total, base, fiber, qs);
		for (const auto &s : report.samples) {
			out << "product-check q=" << to_string(s.q) << ": ";
			if (s.skipped) {
				out << "skipped (singular)\n";
				continue;
			}
			out << "total=" << to_string(s.total_value)
			    << " base*fiber=" << to_string(s.base_value * s.fiber_value)
			    << " equal=" << (s.equal ? "yes" : "no") << "\n";
		}
		out << "product-check: " << (report.all_equal ? "all equal" : "mismatch")
		    << "\n";
		return report.all_equal ? 0 : 1;
	}

	FiniteMetricSpace x = resolve_space(uri);
	out << "space: " << describe(uri, x) << "\n";
	std::string bname;
	bool is_builtin = builtin_name(uri, bname);
	for (const auto &q : qs) {
		Rational value = magnitude_at(x, q);
		out << "magnitude q=" << to_string(q) << ": " << to_string(value) << "\n";
		if (is_builtin && (bname == "prism" || bname == "K33fib"))
			out << "known q=" << to_string(q) << ": 6/(1+3q+2q^2) = "
			    << to_string(prism_magnitude(q)) << "\n";
		else if (is_builtin && bname.size() == 2 && bname[0] == 'K' &&
		         bname[1] >= '2' && bname[1] <= '4')
			out << "known q=" << to_string(q) << ": n/(1+(n-1)q) = "
			    << to_string(complete_magnitude(bname[1] - '0', q)) << "\n";
	}
	return 0;
}

int cmd_builtin(std::ostream &out, const std::string &name, bool list) {
	if (list) {
		for (const auto &n : builtin_space_names())
			out << (n == "K33fib" ? "fibration: " : "space: ") << n << "\n";
		for (const auto &n : builtin_group_names())
			out << "group: " << n << "\n";
		return 0;
	}
	if (name == "K33fib") {
		write_fib(out, k33_fibration());
		return 0;
	}
	for (const auto &n : builtin_space_names())
		if (n == name) {
			write_dmat(out, builtin_space(name));
			return 0;
		}
	for (const auto &n : builtin_group_names())
		if (n == name) {
			write_grp(out, builtin_group(name));
			return 0;
		}
	throw ParseError("unknown builtin '" + name + "'");
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
	CLI::App app{"metric fibrations over finite metric spaces"};
	app.require_subcommand(1);
	int threads = 1;
	app.add_option("--threads", threads, "worker thread count (results never depend on it)")
	    ->check(CLI::PositiveNumber);

	std::string space_uri, out_path, base_uri, fiber_uri, group_uri, name;
	std::vector<std::string> loops, q_tokens, product_uris;
	int bound = 8;
	bool list = false;

	CLI::App *check_metric = app.add_subcommand("check-metric", "validate a metric space");
	check_metric->add_option("space", space_uri, "matrix, graph file or builtin: URI")
	    ->required();

	CLI::App *graph_metric =
	    app.add_subcommand("graph-metric", "shortest-path metric of a weighted graph");
	graph_metric->add_option("graph", space_uri, "graph file")->required();
	graph_metric->add_option("--out", out_path, "write the matrix here instead of stdout");

	CLI::App *check_fibration =
	    app.add_subcommand("check-fibration", "validate a projection as a fibration");
	check_fibration->add_option("fibration", space_uri, "fibration file or builtin:K33fib")
	    ->required();

	CLI::App *check_action = app.add_subcommand("check-action", "validate a metric action");
	check_action->add_option("action", space_uri, "action file")->required();

	CLI::App *groth =
	    app.add_subcommand("grothendieck", "total space of a metric action");
	groth->add_option("action", space_uri, "action file")->required();
	groth->add_option("--out", out_path, "write the fibration here instead of stdout");

	CLI::App *classify =
	    app.add_subcommand("classify", "fibrations with a given base and fiber");
	classify->add_option("--base", base_uri, "base space")->required();
	classify->add_option("--fiber", fiber_uri, "fiber space")->required();
	classify->add_option("--out", out_path, "directory for one .fib file per class");

	CLI::App *classify_principal =
	    app.add_subcommand("classify-principal", "principal actions of a normed group");
	classify_principal->add_option("--base", base_uri, "base space")->required();
	classify_principal->add_option("--group", group_uri, "group file or builtin: URI")
	    ->required();

	CLI::App *pi1 = app.add_subcommand("pi1", "fundamental group data of a space");
	pi1->add_option("--base", base_uri, "space")->required();
	pi1->add_option("--loop", loops, "loop as comma-separated labels, repeatable");
	pi1->add_option("--bound", bound, "search bound for loop norms");

	CLI::App *cech = app.add_subcommand("cech", "cocycle classes over a base");
	cech->add_option("--base", base_uri, "base space")->required();
	cech->add_option("--group", group_uri, "group file or builtin: URI")->required();

	CLI::App *magnitude = app.add_subcommand("magnitude", "exact magnitude at sample points");
	magnitude->add_option("space", space_uri, "matrix, graph file or builtin: URI");
	magnitude->add_option("--q", q_tokens, "sample point in (0,1), repeatable");
	magnitude->add_option("--check-product", product_uris, "total, base and fiber spaces")
	    ->expected(3);

	CLI::App *builtin = app.add_subcommand("builtin", "print a builtin space or group");
	builtin->add_option("name", name, "builtin name");
	builtin->add_flag("--list", list, "list all builtin names");

	for (CLI::App *sub : app.get_subcommands(nullptr))
		sub->fallthrough();

	std::vector<const char *> argv;
	argv.push_back("metfib");
	for (const auto &a : args)
		argv.push_back(a.c_str());
	try {
		app.parse(static_cast<int>(argv.size()), argv.data());
	} catch (const CLI::CallForHelp &) {
		out << app.help();
		return 0;
	} catch (const CLI::CallForAllHelp &) {
		out << app.help("", CLI::AppFormatMode::All);
		return 0;
	} catch (const CLI::ParseError &e) {
		err << "error: " << e.what() << "\n";
		return 2;
	}

	try {
		if (app.got_subcommand(check_metric))
			return cmd_check_metric(out, space_uri);
		if (app.got_subcommand(graph_metric))
			return cmd_graph_metric(out, space_uri, out_path);
		if (app.got_subcommand(check_fibration))
			return cmd_check_fibration(out, space_uri);
		if (app.got_subcommand(check_action))
			return cmd_check_action(out, space_uri);
		if (app.got_subcommand(groth))
			return cmd_grothendieck(out, space_uri, out_path);
		if (app.got_subcommand(classify))
			return cmd_classify(out, base_uri, fiber_uri, out_path);
		if (app.got_subcommand(classify_principal))
			return cmd_classify_principal(out, base_uri, group_uri);
		if (app.got_subcommand(pi1))
			return cmd_pi1(out, base_uri, loops, bound);
		if (app.got_subcommand(cech))
			return cmd_cech(out, base_uri, group_uri);
		if (app.got_subcommand(magnitude)) {
			if (product_uris.empty() && space_uri.empty()) {
				err << "error: magnitude needs a space or --check-product\n";
				return 2;
			}
			return cmd_magnitude(out, space_uri, product_uris, q_tokens);
		}
		if (app.got_subcommand(builtin)) {
			if (!list && name.empty()) {
				err << "error: builtin needs a name or --list\n";
				return 2;
			}
			return cmd_builtin(out, name, list);
		}
	} catch (const ParseError &e) {
		err << "error: " << e.what() << "\n";
		return 2;
	} catch (const Error &e) {
		err << "error: " << e.what() << "\n";
		return 1;
	}
	err << "error: no subcommand\n";
	return 2;
}

} // namespace metfib
