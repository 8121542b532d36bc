#include "expofuse/cli.hpp"

#include "expofuse/expofuse.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

namespace expofuse::cli {

namespace {

struct DiffusionFlags
{
  int iterations = 1;
  double lambda = 1.0 / 7.0;
  double kappa = 30.0; // 0-255 scale
  std::string conduction = "g1";

  void attach(CLI::App& app)
  {
    app.add_option("--t", iterations, "Diffusion iterations (>= 0)")->capture_default_str();
    app.add_option("--lambda", lambda, "Diffusion rate in (0, 1]")->capture_default_str();
    app.add_option("--kappa", kappa, "Gradient scale on the 0-255 intensity scale")
      ->capture_default_str();
    app.add_option("--conduction", conduction, "Edge-stopping function")
      ->check(CLI::IsMember({"g1", "g2"}))
      ->capture_default_str();
  }

  DiffusionParams<double> params() const
  {
    DiffusionParams<double> p;
    p.iterations = iterations;
    p.lambda = lambda;
    p.kappa = kappa / 255.0;
    p.variant = conduction == "g2" ? Conduction::G2 : Conduction::G1;
    p.validate();
    return p;
  }
};

// Loads every path and requires identical dimensions, naming the first
// offender.
ExposureStack<double> load_stack(const std::vector<std::string>& paths)
{
  ExposureStack<double> stack;
  for (const auto& path : paths) {
    stack.push_back(read_pnm_file(path));
    const auto& img = stack.back();
    const auto& ref = stack.front();
    if (!img.same_shape(ref))
      throw DimensionError(path + " is " + std::to_string(img.width()) + "x" +
                           std::to_string(img.height()) + " with " +
                           std::to_string(img.channel_count()) + " channel(s), but " +
                           paths.front() + " is " + std::to_string(ref.width()) + "x" +
                           std::to_string(ref.height()) + " with " +
                           std::to_string(ref.channel_count()) + " channel(s)");
  }
  return stack;
}

std::optional<int> parse_levels(const std::string& text)
{
  if (text == "auto")
    return std::nullopt;
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw CLI::ValidationError("--levels", "expected a positive integer or 'auto', got '" + text + "'");
  if (value < 1)
    throw ConfigError("--levels must be >= 1, got " + text);
  return value;
}

// Inserts "_k" before the extension when several inputs share one output
// name.
std::filesystem::path indexed(const std::string& path, std::size_t k, std::size_t count)
{
  if (count == 1)
    return path;
  std::filesystem::path p(path);
  const auto ext = p.extension();
  p.replace_extension();
  p += "_" + std::to_string(k) + ext.string();
  return p;
}

ImageD detail_image(const std::vector<PlaneD>& details)
{
  std::vector<PlaneD> encoded;
  for (const auto& d : details)
    encoded.push_back((d + 1.0) / 2.0);
  return ImageD(std::move(encoded));
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Multi-exposure fusion with anisotropic-diffusion base/detail layers"};
  app.name("expofuse");
  app.require_subcommand(1);

  unsigned threads = 0;

  // fuse
  auto* fuse = app.add_subcommand("fuse", "Fuse a bracketed exposure stack into one image");
  DiffusionFlags fuse_diffusion;
  std::string fuse_output;
  std::string detail_mode = "sigmoid";
  FusionConfig<double> config;
  std::string levels = "auto";
  std::vector<std::string> fuse_inputs;
  fuse->add_option("-o,--output", fuse_output, "Fused PGM/PPM output")->required();
  fuse_diffusion.attach(*fuse);
  fuse->add_option("--detail-mode", detail_mode, "Detail fusion: user (linear) or sigmoid")
    ->check(CLI::IsMember({"user", "sigmoid"}))
    ->capture_default_str();
  fuse->add_option("--alpha1", config.alpha1, "Linear detail gain (user mode)")->capture_default_str();
  fuse->add_option("--alpha2", config.alpha2, "Sigmoid detail gain")->capture_default_str();
  fuse->add_option("--a", config.sigmoid_weight, "Sigmoid weight")->capture_default_str();
  fuse->add_option("--theta", config.sigmoid_threshold, "Sigmoid threshold")->capture_default_str();
  fuse->add_option("--levels", levels, "Pyramid depth, or 'auto'")->capture_default_str();
  fuse->add_option("--threads", threads, "Worker threads (0 = default)");
  fuse->add_option("inputs", fuse_inputs, "Exposures (PGM/PPM, same size)")->required();

  // decompose
  auto* decompose_cmd = app.add_subcommand(
    "decompose",
    "Write base and detail layers; detail is stored as (D+1)/2 so zero detail is mid-gray");
  DiffusionFlags decompose_diffusion;
  std::string base_output, detail_output, weights_prefix;
  std::vector<std::string> decompose_inputs;
  decompose_cmd->add_option("--base", base_output, "Base layer output");
  decompose_cmd->add_option("--detail", detail_output, "Detail layer output, encoded (D+1)/2");
  decompose_cmd->add_option("--weights", weights_prefix,
                            "Write normalized weight maps as PREFIX_k.pgm, one per input");
  decompose_diffusion.attach(*decompose_cmd);
  decompose_cmd->add_option("--threads", threads, "Worker threads (0 = default)");
  decompose_cmd->add_option("inputs", decompose_inputs, "Input image(s)")->required();

  // metrics
  auto* metrics = app.add_subcommand(
    "metrics", "Print entropy_bits,relative_mse_pct,elapsed_ms as one CSV line");
  std::string entropy_input;
  std::vector<std::string> mse_inputs;
  metrics->add_option("--entropy", entropy_input, "Image whose luminance entropy is reported");
  metrics->add_option("--mse", mse_inputs, "TEST REF: relative MSE of TEST against REF (percent)")
    ->expected(2);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : usage_error;
  }

  try {
    if (threads != 0)
      set_thread_count(threads);

    if (fuse->parsed()) {
      config.diffusion = fuse_diffusion.params();
      config.detail_mode = detail_mode == "user" ? DetailMode::UserDriven : DetailMode::Sigmoid;
      config.depth = parse_levels(levels);
      config.validate();

      const auto stack = load_stack(fuse_inputs);
      const auto result = fuse_exposures(stack, config);
      write_pnm_file(fuse_output, result.image);
      return ok;
    }

    if (decompose_cmd->parsed()) {
      if (base_output.empty() && detail_output.empty() && weights_prefix.empty()) {
        err << "decompose: nothing to do, give --base, --detail or --weights\n";
        return usage_error;
      }
      const auto params = decompose_diffusion.params();
      const auto stack = load_stack(decompose_inputs);
      const std::size_t n = stack.size();
      std::vector<PlaneD> ranges;
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<PlaneD> bases, details;
        for (const auto& channel : stack[k].channels()) {
          auto layers = decompose(channel, params);
          bases.push_back(std::move(layers.base));
          details.push_back(std::move(layers.detail));
        }
        if (!weights_prefix.empty())
          ranges.push_back(local_range(to_luminance(ImageD(bases))));
        if (!base_output.empty())
          write_pnm_file(indexed(base_output, k, n), ImageD(std::move(bases)));
        if (!detail_output.empty())
          write_pnm_file(indexed(detail_output, k, n), detail_image(details));
      }
      if (!weights_prefix.empty()) {
        const auto weights = normalize_weights(ranges);
        for (std::size_t k = 0; k < n; ++k)
          write_pnm_file(weights_prefix + "_" + std::to_string(k) + ".pgm",
                         ImageD(weights.maps[k]));
      }
      return ok;
    }

    if (metrics->parsed()) {
      if (entropy_input.empty() && mse_inputs.empty()) {
        err << "metrics: give --entropy IN and/or --mse TEST REF\n";
        return usage_error;
      }
      MetricReport report;
      if (!entropy_input.empty())
        report.entropy_bits = entropy(read_pnm_file(entropy_input));
      if (!mse_inputs.empty()) {
        const auto test = read_pnm_file(mse_inputs[0]);
        const auto ref = read_pnm_file(mse_inputs[1]);
        if (!test.same_shape(ref))
          throw DimensionError(mse_inputs[0] + " and " + mse_inputs[1] + " differ in size");
        report.relative_mse_pct = relative_mse(test, ref);
      }
      out << report.csv() << '\n';
      return ok;
    }
  } catch (const CLI::ValidationError& e) {
    err << "expofuse: " << e.what() << '\n';
    return usage_error;
  } catch (const ParseError& e) {
    err << "expofuse: " << e.what() << '\n';
    return io_error;
  } catch (const IoError& e) {
    err << "expofuse: " << e.what() << '\n';
    return io_error;
  } catch (const DimensionError& e) {
    err << "expofuse: " << e.what() << '\n';
    return config_error;
  } catch (const ConfigError& e) {
    err << "expofuse: " << e.what() << '\n';
    return config_error;
  }
  return usage_error;
}

} // namespace expofuse::cli
