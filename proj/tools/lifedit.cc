// lifedit: render, bake, fit, edit and compare from the command line.
//
// Exit codes: 0 success, 1 usage error, 2 I/O or format error, 3 numerical
// failure. Messages go to stderr; results meant for scripts go to stdout.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lifedit/demo_scene.h"
#include "lifedit/errors.h"
#include "lifedit/inverse.h"
#include "lifedit/io.h"
#include "lifedit/lighting.h"
#include "lifedit/metrics.h"
#include "lifedit/parallel.h"
#include "lifedit/render.h"
#include "lifedit/sh.h"
#include "lifedit/viewset.h"

namespace fs = std::filesystem;
using namespace lifedit;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kNumerical = 3 };

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> spp;
  std::optional<int> resolution;
};

void apply(const Overrides& o, Scene& scene) {
  if (o.seed) scene.seed = *o.seed;
  if (o.spp) scene.spp = *o.spp;
  if (o.resolution) scene.lif_resolution = *o.resolution;
}

const Camera& pick_camera(const Scene& scene, int index) {
  if (scene.cameras.empty()) throw InputError("scene has no [camera] block");
  if (index < 0 || index >= static_cast<int>(scene.cameras.size())) {
    throw InputError("camera index " + std::to_string(index) + " out of range (scene has " +
                     std::to_string(scene.cameras.size()) + ")");
  }
  return scene.cameras[index];
}

void require_positive(const char* name, int value) {
  if (value < 1) throw InputError(std::string(name) + " must be >= 1");
}

void print_report(const char* what, const FitReport& r) {
  std::printf("%s iterations %d\n", what, r.iterations);
  std::printf("initial_loss %.8g\n", r.initial_loss);
  std::printf("final_loss %.8g\n", r.final_loss);
  std::printf("observed_texels %d\n", r.observed_texels);
  std::printf("unobserved_texels %d\n", r.unobserved_texels);
  std::printf("mean_abs_residual %.8g\n", r.mean_abs_residual);
  std::printf("max_abs_residual %.8g\n", r.max_abs_residual);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Material editing with baked local irradiance functions"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: LIFEDIT_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  std::string scene_path, out_path, lif_path;
  Overrides ov;
  int camera = 0;
  int brdf_samples = kDefaultBrdfSamples;
  std::function<void()> action;

  auto scene_opts = [&](CLI::App* sub) {
    sub->add_option("--scene", scene_path, "Scene file")->required();
    sub->add_option("--seed", ov.seed, "Override the scene seed");
  };

  // render-ref
  auto* render_ref = app.add_subcommand("render-ref", "Monte Carlo reference render");
  scene_opts(render_ref);
  render_ref->add_option("--spp", ov.spp, "Samples per pixel");
  render_ref->add_option("--camera", camera, "Camera index");
  bool all_views = false;
  std::string out_dir;
  render_ref->add_option("--out", out_path, "Output PFM");
  render_ref->add_flag("--all", all_views, "Render every camera as a training view set");
  render_ref->add_option("--out-dir", out_dir, "View set directory for --all");
  render_ref->callback([&] {
    action = [&] {
      Scene scene = load_scene(fs::path(scene_path));
      apply(ov, scene);
      require_positive("spp", scene.spp);
      if (all_views) {
        if (out_dir.empty()) throw InputError("--all requires --out-dir");
        if (scene.cameras.empty()) throw InputError("scene has no [camera] block");
        ViewSet views;
        for (std::size_t k = 0; k < scene.cameras.size(); ++k) {
          const Camera& cam = scene.cameras[k];
          views.push_back({render_reference(scene, cam, scene.spp, derive_seed(scene.seed, k)),
                           render_mask(scene, cam), cam});
        }
        write_viewset(out_dir, views);
        std::printf("views %zu\n", views.size());
        return;
      }
      if (out_path.empty()) throw InputError("--out is required");
      const ImageRGB img = render_reference(scene, pick_camera(scene, camera), scene.spp, scene.seed);
      write_pfm(out_path, img);
    };
  });

  // render-sh
  auto* render_sh_cmd = app.add_subcommand("render-sh", "Render with a baked or fitted LIF");
  scene_opts(render_sh_cmd);
  render_sh_cmd->add_option("--lif", lif_path, "LIF file")->required();
  render_sh_cmd->add_option("--camera", camera, "Camera index");
  render_sh_cmd->add_option("--brdf-samples", brdf_samples, "BRDF projection samples");
  render_sh_cmd->add_option("--out", out_path, "Output PFM")->required();
  render_sh_cmd->callback([&] {
    action = [&] {
      Scene scene = load_scene(fs::path(scene_path));
      apply(ov, scene);
      const LifTexture lif = read_lif(lif_path);
      require_positive("brdf-samples", brdf_samples);
      write_pfm(out_path,
                render_sh(scene, pick_camera(scene, camera), lif, brdf_samples, scene.seed));
    };
  });

  // render-mask
  auto* render_mask_cmd = app.add_subcommand("render-mask", "Object coverage mask");
  render_mask_cmd->add_option("--scene", scene_path, "Scene file")->required();
  render_mask_cmd->add_option("--camera", camera, "Camera index");
  render_mask_cmd->add_option("--out", out_path, "Output PFM")->required();
  render_mask_cmd->callback([&] {
    action = [&] {
      const Scene scene = load_scene(fs::path(scene_path));
      write_pfm(out_path, render_mask(scene, pick_camera(scene, camera)));
    };
  });

  // bake-lif
  auto* bake = app.add_subcommand("bake-lif", "Bake the LIF texture from the scene lighting");
  scene_opts(bake);
  int samples = 4096;
  bool unshadowed = false;
  bake->add_option("--samples", samples, "Samples per texel");
  bake->add_option("--resolution", ov.resolution, "LIF texture resolution");
  bake->add_flag("--unshadowed", unshadowed, "Ignore visibility (fit-lif prior)");
  bake->add_option("--out", out_path, "Output LIF")->required();
  bake->callback([&] {
    action = [&] {
      Scene scene = load_scene(fs::path(scene_path));
      apply(ov, scene);
      require_positive("samples", samples);
      const LifTexture lif =
          bake_lif_texture(scene, scene.lif_resolution, samples, scene.seed,
                           unshadowed ? Visibility::kIgnored : Visibility::kTraced);
      write_lif(out_path, lif);
      std::printf("valid_texels %d\n", lif.valid_count());
    };
  });

  // fit-lif
  auto* fit = app.add_subcommand("fit-lif", "Fit the LIF texture to training views");
  scene_opts(fit);
  std::string views_dir, albedo_path, prior_path;
  double lambda = kDefaultLambda;
  int prior_samples = 1024;
  fit->add_option("--views", views_dir, "View set directory")->required();
  fit->add_option("--albedo", albedo_path, "Albedo texture PFM")->required();
  fit->add_option("--prior", prior_path, "Prior LIF (default: unshadowed bake)");
  fit->add_option("--prior-samples", prior_samples, "Samples per texel for the default prior");
  fit->add_option("--lambda", lambda, "Regularization weight");
  fit->add_option("--resolution", ov.resolution, "LIF texture resolution");
  fit->add_option("--brdf-samples", brdf_samples, "BRDF projection samples");
  fit->add_option("--out", out_path, "Output LIF")->required();
  fit->callback([&] {
    action = [&] {
      Scene scene = load_scene(fs::path(scene_path));
      apply(ov, scene);
      const ViewSet views = make_viewset(views_dir);
      const Texture albedo(read_pfm(albedo_path));
      require_positive("prior-samples", prior_samples);
      require_positive("brdf-samples", brdf_samples);
      const LifTexture prior =
          prior_path.empty() ? bake_lif_texture(scene, scene.lif_resolution, prior_samples,
                                                scene.seed, Visibility::kIgnored)
                             : read_lif(prior_path);
      const LifFit result = fit_lif(scene, views, albedo, scene.lif_resolution, lambda, prior,
                                    brdf_samples, scene.seed);
      write_lif(out_path, result.lif);
      print_report("fit-lif", result.report);
    };
  });

  // estimate-albedo
  auto* est = app.add_subcommand("estimate-albedo", "Recover a diffuse albedo texture");
  scene_opts(est);
  int iterations = 400;
  double step = 0.02;
  est->add_option("--views", views_dir, "View set directory")->required();
  est->add_option("--resolution", ov.resolution, "Albedo texture resolution");
  est->add_option("--spp", ov.spp, "Irradiance samples per pixel");
  est->add_option("--iterations", iterations, "Descent epochs");
  est->add_option("--step", step, "Step size");
  est->add_option("--out", out_path, "Output albedo PFM")->required();
  est->callback([&] {
    action = [&] {
      Scene scene = load_scene(fs::path(scene_path));
      apply(ov, scene);
      require_positive("spp", scene.spp);
      const ViewSet views = make_viewset(views_dir);
      const AlbedoEstimate result =
          estimate_albedo(scene, views, scene.lif_resolution, iterations, step, scene.seed);
      write_pfm(out_path, result.albedo.image());
      print_report("estimate-albedo", result.report);
    };
  });

  // vis-lif
  auto* vis = app.add_subcommand("vis-lif", "Visualize one texel, or render with a swapped LIF");
  std::optional<double> vis_u, vis_v;
  std::optional<int> vis_texel;
  int vis_w = 128, vis_h = 64;
  std::string swap_path;
  vis->add_option("--lif", lif_path, "LIF file to visualize");
  vis->add_option("--u", vis_u, "Texture u of the texel");
  vis->add_option("--v", vis_v, "Texture v of the texel");
  vis->add_option("--texel", vis_texel, "Flat texel index");
  vis->add_option("--width", vis_w, "Lat-long width");
  vis->add_option("--height", vis_h, "Lat-long height");
  vis->add_option("--swap-lif", swap_path, "Render --scene with this LIF instead");
  vis->add_option("--scene", scene_path, "Scene for --swap-lif");
  vis->add_option("--seed", ov.seed, "Override the scene seed");
  vis->add_option("--camera", camera, "Camera index for --swap-lif");
  vis->add_option("--brdf-samples", brdf_samples, "BRDF projection samples for --swap-lif");
  vis->add_option("--out", out_path, "Output PFM")->required();
  vis->callback([&] {
    action = [&] {
      if (!swap_path.empty()) {
        if (scene_path.empty()) throw InputError("--swap-lif requires --scene");
        Scene scene = load_scene(fs::path(scene_path));
        apply(ov, scene);
        const LifTexture lif = read_lif(swap_path);
        require_positive("brdf-samples", brdf_samples);
        write_pfm(out_path,
                  render_sh(scene, pick_camera(scene, camera), lif, brdf_samples, scene.seed));
        return;
      }
      if (lif_path.empty()) throw InputError("vis-lif needs --lif or --swap-lif");
      const LifTexture lif = read_lif(lif_path);
      ShTripled coeffs;
      if (vis_texel) {
        if (*vis_texel < 0 || *vis_texel >= lif.texel_count()) {
          throw InputError("texel index out of range");
        }
        if (!lif.valid(*vis_texel)) throw InputError("texel " + std::to_string(*vis_texel) + " is not valid");
        coeffs = lif.coeffs(*vis_texel).cast<double>();
      } else if (vis_u && vis_v) {
        coeffs = lif_sample(lif, Vec2(*vis_u, *vis_v));
      } else {
        throw InputError("vis-lif needs --texel or both --u and --v");
      }
      write_pfm(out_path, sh_to_latlong(coeffs, vis_w, vis_h));
    };
  });

  // edit
  auto* edit = app.add_subcommand("edit", "Rewrite the scene's material block");
  std::string albedo_tex, model, bump_path;
  std::optional<double> alpha, strength;
  std::vector<double> tint;
  std::optional<std::vector<double>> albedo_rgb;
  edit->add_option("--scene", scene_path, "Scene file")->required();
  edit->add_option("--albedo-texture", albedo_tex, "New albedo texture PFM");
  edit->add_option("--albedo-rgb", albedo_rgb, "New constant albedo")->expected(3);
  edit->add_option("--model", model, "diffuse or rough-conductor");
  edit->add_option("--alpha", alpha, "GGX roughness");
  edit->add_option("--tint", tint, "Conductor reflectance")->expected(3);
  edit->add_option("--bump", bump_path, "Height map PFM");
  edit->add_option("--strength", strength, "Bump strength");
  edit->add_option("--out", out_path, "Output scene file (default: overwrite --scene)");
  edit->callback([&] {
    action = [&] {
      SceneDescription desc = read_scene_description(scene_path);
      MaterialDescription& m = desc.material;
      if (!albedo_tex.empty()) {
        m.albedo = fs::absolute(albedo_tex).string();
        m.albedo_rgb.reset();
      }
      if (albedo_rgb) {
        m.albedo_rgb = Rgb((*albedo_rgb)[0], (*albedo_rgb)[1], (*albedo_rgb)[2]);
        m.albedo.reset();
      }
      if (!model.empty()) m.kind = std::string(to_string(parse_material_kind(model)));
      if (alpha) m.alpha = *alpha;
      if (!tint.empty()) m.tint = Rgb(tint[0], tint[1], tint[2]);
      if (!bump_path.empty()) m.bump = fs::absolute(bump_path).string();
      if (strength) m.bump_strength = *strength;
      if (strength && !m.bump) throw InputError("--strength needs a bump map");
      // Loading the material validates ranges and that the textures exist.
      load_material(desc);
      write_scene_description(out_path.empty() ? fs::path(scene_path) : fs::path(out_path), desc);
    };
  });

  // metrics
  auto* metrics = app.add_subcommand("metrics", "PSNR and SSIM of a test image");
  std::string ref_path, test_path, mask_path;
  metrics->add_option("--ref", ref_path, "Reference PFM")->required();
  metrics->add_option("--test", test_path, "Test PFM")->required();
  metrics->add_option("--mask", mask_path, "Mask PFM");
  metrics->callback([&] {
    action = [&] {
      const ImageRGB ref = read_pfm(ref_path);
      const ImageRGB test = read_pfm(test_path);
      std::optional<ImageRGB> mask;
      if (!mask_path.empty()) mask = read_pfm(mask_path);
      const MetricReport r = compare_images(ref, test, mask ? &*mask : nullptr);
      std::printf("PSNR %.4f SSIM %.4f\n", r.psnr, r.ssim);
    };
  });

  // demo-scene
  auto* demo = app.add_subcommand("demo-scene", "Write the sphere-on-plane demo scene");
  int views = 8, size = 256, lif_res = 256;
  std::uint64_t demo_seed = 1;
  int demo_spp = 256;
  demo->add_option("--out-dir", out_dir, "Output directory")->required();
  demo->add_option("--views", views, "Number of orbit cameras");
  demo->add_option("--size", size, "Image width and height");
  demo->add_option("--seed", demo_seed, "Scene seed");
  demo->add_option("--spp", demo_spp, "Scene samples per pixel");
  demo->add_option("--lif-resolution", lif_res, "Scene LIF resolution");
  demo->callback([&] {
    action = [&] {
      require_positive("views", views);
      require_positive("size", size);
      write_demo_scene(out_dir, views, size, demo_seed, demo_spp, lif_res);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (threads > 0) set_thread_count(threads);
  try {
    action();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}
