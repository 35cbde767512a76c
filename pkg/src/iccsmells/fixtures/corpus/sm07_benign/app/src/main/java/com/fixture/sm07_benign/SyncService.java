package com.fixture.sm07_benign;

import android.app.Service;
import android.content.Intent;
import android.content.pm.PackageManager;
import android.os.IBinder;

public class SyncService extends Service {
    @Override
    public int onStartCommand(Intent intent, int flags, int startId) {
        if (checkCallingPermission("com.fixture.permission.SYNC") != PackageManager.PERMISSION_GRANTED) {
            stopSelf();
        }
        return START_NOT_STICKY;
    }

    @Override
    public IBinder onBind(Intent intent) {
        enforceCallingPermission("com.fixture.permission.SYNC", "bind denied");
        return null;
    }
}
