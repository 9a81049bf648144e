import { WeatherGameApp } from "./app.js";

const root = document.getElementById("app");
if (root) {
  const baseUrl = root.dataset.apiBase ?? "";
  new WeatherGameApp(root, baseUrl).start();
}
