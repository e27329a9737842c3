// wqsolve: solve a word-equation problem file, run a corpus, or generate one.

#include "wordeq/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace wordeq::cli;

namespace {

std::string slurp(const fs::path& path) {
	std::ifstream in(path);
	if (!in) throw std::runtime_error("cannot read " + path.string());
	std::ostringstream out;
	out << in.rdbuf();
	return out.str();
}

void report(const Outcome& o) {
	std::cout << o.render();
	for (const auto& n : o.notes) std::cerr << "note: " << n << '\n';
	if (!o.error.empty()) std::cerr << "error: " << o.error << '\n';
}

int run_corpus(const fs::path& dir, const RunOptions& options) {
	std::vector<fs::path> files;
	for (const auto& e : fs::directory_iterator(dir)) {
		if (e.is_regular_file() && e.path().extension() == ".wq") files.push_back(e.path());
	}
	std::sort(files.begin(), files.end());
	std::size_t failures = 0;
	for (const auto& f : files) {
		const std::string text = slurp(f);
		const Outcome o = run_text(text, options);
		const std::string got = o.verdict.empty() ? "EXIT" + std::to_string(o.exit_code) : o.verdict;
		const auto want = expected_verdict(text);
		const bool ok = !want || *want == got;
		failures += ok ? 0 : 1;
		std::cout << (ok ? "ok   " : "FAIL ") << f.filename().string() << ' ' << got;
		if (!ok) std::cout << " (expected " << *want << ")";
		std::cout << '\n';
	}
	std::cout << files.size() - failures << '/' << files.size() << " files as expected\n";
	return failures == 0 ? 0 : 1;
}

int generate(const fs::path& dir, std::uint64_t seed, std::size_t count) {
	fs::create_directories(dir);
	std::mt19937_64 rng(seed);
	for (std::size_t i = 0; i < count; ++i) {
		const std::string text = generate_problem(rng);
		const Outcome o = run_text(text);
		const std::string got = o.verdict.empty() ? "EXIT" + std::to_string(o.exit_code) : o.verdict;
		std::ostringstream name;
		name << "gen" << std::setw(3) << std::setfill('0') << i << ".wq";
		std::ofstream(dir / name.str()) << "; expect: " << got << '\n' << text;
	}
	return 0;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Word-equation solver"};
	std::string file;
	std::string corpus;
	std::string generate_dir;
	std::string force;
	std::size_t max_expand = 4096;
	std::uint64_t seed = 1;
	std::size_t count = 20;
	app.add_option("file", file, "Problem file ('-' reads standard input)");
	app.add_option("--corpus", corpus, "Run every .wq file in a directory and check its '; expect:' line")
		->check(CLI::ExistingDirectory);
	app.add_option("--force", force, "Procedure to use instead of automatic routing");
	app.add_option("--max-expand", max_expand, "Longest model image printed in full");
	app.add_option("--generate", generate_dir, "Write random problem files into a directory");
	app.add_option("--seed", seed, "Seed for --generate")->needs("--generate");
	app.add_option("--count", count, "Number of files for --generate")->needs("--generate");
	CLI11_PARSE(app, argc, argv);

	RunOptions options;
	options.max_expand = max_expand;
	if (!force.empty()) options.force = force;
	try {
		if (!generate_dir.empty()) return generate(generate_dir, seed, count);
		if (!corpus.empty()) return run_corpus(corpus, options);
		if (file.empty()) {
			std::cerr << app.help();
			return exit_bad_input;
		}
		const std::string text = file == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : slurp(file);
		const Outcome o = run_text(text, options);
		report(o);
		return o.exit_code;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return exit_failure;
	}
}
