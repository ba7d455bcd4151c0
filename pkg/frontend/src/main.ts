import { ApiClient } from "./api.js";
import { CollageApp } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");

const app = new CollageApp(root, new ApiClient(""), {
  width: Math.max(640, window.innerWidth - 260),
  height: Math.max(480, window.innerHeight - 20),
});
void app.load();
