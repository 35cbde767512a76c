package com.fixture.sm06_benign;

import android.app.Activity;
import android.content.Intent;
import android.net.Uri;
import android.webkit.WebView;
import android.webkit.WebViewClient;

public class BrowserActivity extends Activity {
    private WebView web;

    void setup() {
        web.setWebViewClient(new TrustedClient());
    }

    static class TrustedClient extends WebViewClient {
        private static final String HOST = "docs.example.com";

        @Override
        public boolean shouldOverrideUrlLoading(WebView view, String url) {
            Uri uri = Uri.parse(url);
            if (HOST.equals(uri.getHost()) && "https".equals(uri.getScheme())) {
                return false;
            }
            return true;
        }
    }
}
