package com.fixture.sm01_benign;

import android.app.Activity;
import android.content.Intent;
import android.net.Uri;

public class ShareActivity extends Activity {
    void share(Uri uri) {
        grantUriPermission("com.example.viewer", uri, Intent.FLAG_GRANT_READ_URI_PERMISSION);
    }
}
